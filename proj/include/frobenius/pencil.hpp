#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "frobenius/linsolve.hpp"
#include "frobenius/poly.hpp"
#include "frobenius/report.hpp"

namespace frob {

// Ring of flat-coordinate polynomials for a degree vector.
Ring ring_for(const DegreeVector& deg, CoeffKind kind, int trunc);

struct ConstMetric {
  int n = 0;
  FracMatrix upper;  // η^{αβ}
  FracMatrix lower;  // η_{αβ}
  int unit_index = 0;

  static ConstMetric from_upper(FracMatrix upper);
};

bool operator==(const ConstMetric& a, const ConstMetric& b);

using PolyMatrix = std::vector<std::vector<GradedPoly>>;

struct IntersectionForm {
  DegreeVector deg;
  Ring ring;
  PolyMatrix g;

  IntersectionForm() = default;
  IntersectionForm(DegreeVector d, Ring r, PolyMatrix entries);
  int n() const { return deg.n; }
  const GradedPoly& at(int a, int b) const { return g[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  IntersectionForm shifted(const ConstMetric& eta, const Fraction& lambda) const;  // g + λη
};

bool operator==(const IntersectionForm& a, const IntersectionForm& b);

// n×n×n array, entry (a, b, c) stands for T^{ab}_c.
struct Tensor3 {
  int n = 0;
  std::vector<GradedPoly> e;

  Tensor3() = default;
  Tensor3(int n_, const Ring& r) : n(n_), e(static_cast<size_t>(n_ * n_ * n_), GradedPoly(r)) {}
  GradedPoly& at(int a, int b, int c) { return e[static_cast<size_t>((a * n + b) * n + c)]; }
  const GradedPoly& at(int a, int b, int c) const { return e[static_cast<size_t>((a * n + b) * n + c)]; }
  friend bool operator==(const Tensor3&, const Tensor3&) = default;
};

struct Christoffel {
  DegreeVector deg;
  Tensor3 gamma;
  const GradedPoly& at(int a, int b, int c) const { return gamma.at(a, b, c); }
};

// Weighted degree of g^{ab}, and of Γ^{ab}_c / Ĉ^{ab}_c.
Fraction metric_degree(const DegreeVector& deg, int a, int b);
Fraction connection_degree(const DegreeVector& deg, int a, int b, int c);

Christoffel christoffel_solve(const IntersectionForm& g, const ConstMetric& eta);

using CoeffMatrix = std::vector<std::vector<CoeffElem>>;
CoeffMatrix invert(const CoeffMatrix& m);  // pivots must be units

// Evaluates g and its derivatives at a point, keeping q symbolic in series mode.
class PointOracle {
 public:
  explicit PointOracle(const IntersectionForm& g);
  // Γ^{ab}_c at the point, flattened (a·n + b)·n + c.
  std::vector<CoeffElem> christoffel(const std::vector<Fraction>& pt) const;
  // Classical Riemann tensor R^ρ_{σμν}, flattened ((ρ·n + σ)·n + μ)·n + ν.
  std::vector<CoeffElem> riemann(const std::vector<Fraction>& pt) const;

 private:
  struct Local;
  Local local(const std::vector<Fraction>& pt, bool second) const;
  IntersectionForm g_;
  std::vector<PolyMatrix> dg_;                // dg_[c][a][b] = ∂_c g^{ab}
  std::vector<std::vector<PolyMatrix>> ddg_;  // ddg_[c][d] = ∂_d ∂_c g
};

std::vector<CoeffElem> christoffel_point_oracle(const IntersectionForm& g, const std::vector<Fraction>& pt);

bool invertible_at(const IntersectionForm& g, const std::vector<Fraction>& pt);

// Seeded rational points with |numerator|, denominator <= 97 where every
// g + λη is invertible.
std::vector<std::vector<Fraction>> sample_points(const IntersectionForm& g, const ConstMetric& eta,
                                                 const std::vector<Fraction>& lambdas, int count, uint64_t seed);

struct PencilOptions {
  std::vector<Fraction> lambdas{Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 3)};
  int points = 20;
  uint64_t seed = 20240611;
  bool symbolic_curvature = false;
};

struct PencilReport {
  std::vector<CheckResult> checks;
  int points_used = 0;
  bool passed() const { return all_passed(checks); }
  const CheckResult* find(const std::string& name) const;
};

PencilReport check_pencil(const IntersectionForm& g, const ConstMetric& eta, const Christoffel& gamma,
                          const PencilOptions& opt = {});

// Contravariant curvature R^{λαβ}_δ assembled symbolically (entries returned
// flattened), together with the η-linear part of the pencil.
std::vector<GradedPoly> symbolic_curvature(const PolyMatrix& g, const Christoffel& gamma);

// f^β for each non-degenerate β (nullopt at degenerate indices).
std::vector<std::optional<GradedPoly>> integrate_vector_potential(const Christoffel& gamma, const ConstMetric& eta);

PolyMatrix constant_matrix(const Ring& r, const FracMatrix& m);
GradedPoly determinant(const PolyMatrix& m);

}  // namespace frob
