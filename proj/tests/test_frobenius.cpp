#include <doctest.h>

#include "frobenius/errors.hpp"
#include "frobenius/frobenius.hpp"
#include "sample_metrics.hpp"

using namespace frob;
using samples::A2;
using samples::Elliptic;
using samples::F;

namespace {

void require_all_pass(const FrobeniusReport& r) {
  for (const auto& c : r.checks) {
    INFO(c.name);
    CHECK_FALSE(c.failed());
  }
}

}  // namespace

TEST_CASE("A2 potential and axioms") {
  A2 s;
  auto b = build_structure(s.g, s.eta);
  CHECK(b.S.F.F == s.potential());  // κ = 27/8
  require_all_pass(verify_frobenius(b.S));
  CHECK(recover_intersection_form(b.S.F, s.eta, s.deg) == s.g);
  // Ĉ agrees with the raised third derivatives of the potential
  CHECK(b.S.C == structure_from_potential(s.potential(), s.eta));
  for (int bb = 0; bb < 2; ++bb) CHECK_FALSE(s.deg.divisor(bb).is_zero());

  GradedPoly route2 = potential_from_structure_constants(b.S.C, s.eta, s.deg, F(0));
  CHECK(route2 == b.S.F.F);
}

TEST_CASE("n = 1 cubic") {
  auto deg = DegreeVector::make(Mode::Generic, {F(1)}, F(2));
  Ring r = ring_for(deg, CoeffKind::Rational, 0);
  auto eta = ConstMetric::from_upper({{F(1)}});
  auto t = GradedPoly::variable(r, 0);
  auto S = structure_from_potential((t * t * t).scaled(F(1, 6)), eta, deg);
  require_all_pass(verify_frobenius(S));
}

TEST_CASE("perturbed structure constants break symmetry") {
  A2 s;
  auto b = build_structure(s.g, s.eta);
  auto S = b.S;
  S.C.at(0, 0, 0) = S.C.at(0, 0, 0) + GradedPoly::variable(s.ring, 1);
  auto rep = verify_frobenius(S);
  CHECK(rep.find("symmetry")->failed());
  CHECK(rep.find("potentiality")->failed());
}

TEST_CASE("elliptic structure") {
  Elliptic s;
  auto b = build_structure(s.g, s.eta);
  CHECK(b.S.F.F == s.potential());
  // F^n sheet: ½ η^{1n} η_{αβ} t^α t^β = t1 t3 + ½ t2²
  auto t1 = GradedPoly::variable(s.ring, 0), t2 = GradedPoly::variable(s.ring, 1), t3 = GradedPoly::variable(s.ring, 2);
  CHECK(b.S.F.Fvec[2] == t1 * t3 + (t2 * t2).scaled(F(1, 2)));
  for (int a = 0; a < 3; ++a)
    for (int g = 0; g < 3; ++g) {
      auto want = GradedPoly::constant(s.ring, a == g ? F(1) : F(0));
      CHECK(b.S.C.at(a, 2, g) == want);
      CHECK(b.S.C.at(2, a, g) == want);
    }
  require_all_pass(verify_frobenius(b.S));
  auto rec = recover_intersection_form(b.S.F, s.eta, s.deg);
  CHECK(rec == s.g);
  for (int a = 0; a < 3; ++a)
    CHECK(rec.at(2, a) == GradedPoly::variable(s.ring, a).scaled(s.deg.d[static_cast<size_t>(a)]));

  // second integration route differs by exactly c·(t1)²
  GradedPoly other = potential_from_structure_constants(b.S.C, s.eta, s.deg, F(1));
  GradedPoly diff = other - b.S.F.F;
  REQUIRE(diff.size() == 1);
  CHECK(diff.terms().begin()->first == Exp{2, 0, 0});
  CHECK(diff.coeff({2, 0, 0}).is_constant());
  normalize_potential(other);
  CHECK(other == b.S.F.F);
}

TEST_CASE("scaling orbit and matching") {
  A2 s;
  auto S = build_structure(s.g, s.eta).S;
  CHECK(match_up_to_scaling(S, S).c == F(1));
  auto S1 = scale_structure(S, F(1));
  CHECK(S1.F.F == S.F.F);
  CHECK(S1.eta == S.eta);
  auto a = scale_structure(scale_structure(S, F(2)), F(3));
  auto c = scale_structure(S, F(6));
  CHECK(a.eta == c.eta);
  CHECK(a.F.F == c.F.F);
  CHECK(a.C == c.C);
  CHECK(a.unit_scale == c.unit_scale);
  for (Fraction k : {F(1), F(-1), F(2), F(1, 3), F(5)}) {
    auto T = scale_structure(S, k);
    CHECK(verify_frobenius(T).passed());
    CHECK(recover_intersection_form(T.F, T.eta, T.deg) == s.g);
    auto m = match_up_to_scaling(S, T);
    CHECK(m.matched);
    CHECK(m.c == k);
  }
  auto m7 = match_up_to_scaling(S, scale_structure(S, F(7)));
  CHECK(m7.c == F(7));
  CHECK_THROWS_AS(scale_structure(S, F(0)), DomainError);

  // a structure in rescaled coordinates pulls back to the original
  auto moved = rescale_coordinates(rescale_coordinates(S, {F(1), F(3)}), {F(1), F(1, 3)});
  CHECK(moved.C == S.C);
  CHECK(moved.F.F == S.F.F);
}

TEST_CASE("unit candidates") {
  Elliptic s;
  CHECK(unit_candidate_check(s.g, s.deg, s.ring.lift(F(1))));
  CHECK_FALSE(unit_candidate_check(s.g, s.deg, s.ring.lift(F(0))));
  auto bad = s.g;
  auto t1 = GradedPoly::variable(s.ring, 0);
  bad.g[0][0] = bad.g[0][0] + t1 * t1;
  CHECK_FALSE(unit_candidate_check(bad, s.deg, s.ring.lift(F(1))));
  CHECK_THROWS_AS(unit_candidate_check(s.g, s.deg, t1), ShapeError);
  CHECK(unit_candidate_check(s.g, s.deg, GradedPoly::constant(s.ring, F(2))));
}

TEST_CASE("forged vector potential breaks integrability") {
  A2 s;
  auto b = build_structure(s.g, s.eta);
  auto f = b.f;
  f[0] = *f[0] + GradedPoly::variable(s.ring, 0) * GradedPoly::variable(s.ring, 1) * GradedPoly::variable(s.ring, 1);
  CHECK_THROWS_WITH_AS(build_potential(f, s.eta, s.deg, s.ring), doctest::Contains("(1, 2)"), VerificationError);
}

TEST_CASE("degenerate column must vanish") {
  Elliptic s;
  auto b = build_structure(s.g, s.eta);
  auto G = b.gamma;
  G.gamma.at(0, 2, 1) = GradedPoly::variable(s.ring, 1);
  CHECK_THROWS_AS(structure_constants(G, s.eta, s.deg), VerificationError);
}
