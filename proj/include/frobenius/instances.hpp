#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frobenius/frobenius.hpp"

namespace frob {

struct InvariantSystem {
  char type = 'A';
  int rank = 0;
  int ambient = 0;             // number of x variables
  std::vector<GradedPoly> s;   // basic invariants in x, s^1 of top degree
  std::vector<int> c;          // degrees c^1 ≥ c^2 ≥ …
  DegreeVector deg;            // d^i = c^i / c^1, charge 1 + 2/c^1
};

// Power sums (type A on the sum-zero hyperplane via centred coordinates, type B
// in squares).  `scales` multiplies each invariant, for alternative normalizations.
InvariantSystem coxeter_invariants(char type, int rank, const std::vector<Fraction>& scales = {});

// Checks algebraic independence (Jacobian rank) and invariance under every
// group element at `points` random points.  Throws DomainError on failure.
void verify_invariants(const InvariantSystem& inv, int points, uint64_t seed);

// g^{ij}(s) = Σ_a ∂s^i/∂x^a ∂s^j/∂x^a by sampling and exact interpolation,
// verified on 10 held-out points.
IntersectionForm orbit_metric(const InvariantSystem& inv, uint64_t seed);

// Ĵ^{ij} = ∂g^{ij}/∂s^1 with constant nonzero determinant.
PolyMatrix saito_metric(const IntersectionForm& g_s);

struct FlatChart {
  std::vector<GradedPoly> t_of_s;
  std::vector<GradedPoly> s_of_t;
  ConstMetric eta;
};

// Flat coordinates of Ĵ.  With normalize_eta, rescales so that η pairs to 1
// (t^1 keeps leading coefficient 1); otherwise every t^α has leading
// coefficient 1 on s^α.
FlatChart flat_coordinates(const IntersectionForm& g_s, const PolyMatrix& J, bool normalize_eta = true);

// g in t-coordinates from g in s-coordinates.
IntersectionForm rewrite_in_flat(const IntersectionForm& g_s, const FlatChart& chart);

struct OrbitChart {
  InvariantSystem inv;
  IntersectionForm g_s;
  PolyMatrix J;
  FlatChart flat;
  IntersectionForm g_t;
  // t^α as polynomials in the ambient x.
  std::vector<GradedPoly> t_of_x() const;
};

OrbitChart coxeter_chart(char type, int rank, uint64_t seed, const std::vector<Fraction>& scales = {},
                         bool normalize_eta = true);

struct GaugePin {
  int order = 0;
  Exp exp;
  Fraction value;
};

struct SeriesSeed {
  DegreeVector deg;
  ConstMetric eta;
  int truncation = 0;
  std::vector<std::pair<Exp, Fraction>> layer0;  // q^0 part of F beyond the unit-forced cubic
  std::vector<GaugePin> pins;
};

// Solves WDVV order by order in q.  Throws SolveError for inconsistent or
// non-unique orders.
Potential elliptic_series_fixture(const SeriesSeed& seed);

// Part of F forced by the unit: ∂_1 ∂_α ∂_β F = η_{αβ}.
GradedPoly unit_cubic(const ConstMetric& eta, const Ring& ring);

}  // namespace frob
