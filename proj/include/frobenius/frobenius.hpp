#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frobenius/pencil.hpp"

namespace frob {

struct Potential {
  GradedPoly F;
  std::vector<GradedPoly> Fvec;  // F^γ = η^{γμ} ∂_μ F
  std::string note;
};

struct FrobeniusStructure {
  ConstMetric eta;
  DegreeVector deg;
  Tensor3 C;  // Ĉ^{αβ}_γ
  Potential F;
  CoeffElem unit_scale = CoeffElem::rational(Fraction(1));  // e = u ∂_1
};

// Ĉ^{αβ}_γ = Γ^{αβ}_γ / (d^β + (1 − D)/2); degenerate β uses η^{1n} δ^α_γ.
Tensor3 structure_constants(const Christoffel& gamma, const ConstMetric& eta, const DegreeVector& deg);

Potential build_potential(const std::vector<std::optional<GradedPoly>>& f, const ConstMetric& eta,
                          const DegreeVector& deg, const Ring& ring);

// Second route: F from c_{abγ} = η_{aα}η_{bβ}Ĉ^{αβ}_γ by three Euler divisions.
// Where ∂_a∂_b F has degree 0 it is integrated along t^n and `free_constant` is added.
GradedPoly potential_from_structure_constants(const Tensor3& C, const ConstMetric& eta, const DegreeVector& deg,
                                              const Fraction& free_constant);

// Drops the constant part of the (t¹)² coefficient.  Returns the removed constant.
Fraction normalize_potential(GradedPoly& F);

// Ĉ^{αβ}_γ = η^{αε} η^{βμ} ∂_ε ∂_μ ∂_γ F
Tensor3 structure_from_potential(const GradedPoly& F, const ConstMetric& eta);
FrobeniusStructure structure_from_potential(const GradedPoly& F, const ConstMetric& eta, const DegreeVector& deg);

struct FrobeniusReport {
  std::vector<CheckResult> checks;
  bool passed() const { return all_passed(checks); }
  const CheckResult* find(const std::string& name) const;
};

FrobeniusReport verify_frobenius(const FrobeniusStructure& S);

IntersectionForm recover_intersection_form(const GradedPoly& F, const ConstMetric& eta, const DegreeVector& deg);
inline IntersectionForm recover_intersection_form(const Potential& P, const ConstMetric& eta, const DegreeVector& deg) {
  return recover_intersection_form(P.F, eta, deg);
}

FrobeniusStructure scale_structure(const FrobeniusStructure& S, const Fraction& c);

struct MatchResult {
  bool matched = false;
  Fraction c;
  std::string mismatch;
};
MatchResult match_up_to_scaling(const FrobeniusStructure& S1, const FrobeniusStructure& S2);

// Re-expresses a structure given in coordinates t' = λ t in the coordinates t.
FrobeniusStructure rescale_coordinates(const FrobeniusStructure& S, const std::vector<Fraction>& lambda);

bool unit_candidate_check(const IntersectionForm& g, const DegreeVector& deg, const CoeffElem& u);
bool unit_candidate_check(const IntersectionForm& g, const DegreeVector& deg, const GradedPoly& u);

// Full chain from a metric: Γ, f, Ĉ and F.
struct Build {
  Christoffel gamma;
  std::vector<std::optional<GradedPoly>> f;
  FrobeniusStructure S;
};
Build build_structure(const IntersectionForm& g, const ConstMetric& eta);

}  // namespace frob
