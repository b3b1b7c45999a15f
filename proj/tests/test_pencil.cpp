#include <doctest.h>

#include "frobenius/errors.hpp"
#include "frobenius/pencil.hpp"
#include "sample_metrics.hpp"

using namespace frob;

namespace {

using samples::A2;
using samples::Elliptic;
using samples::F;

}  // namespace

TEST_CASE("A2 Christoffel symbols") {
  A2 s;
  auto G = christoffel_solve(s.g, s.eta);
  auto t2 = GradedPoly::variable(s.ring, 1);
  auto c = [&](long n, long d = 1) { return GradedPoly::constant(s.ring, F(n, d)); };
  CHECK(G.at(0, 0, 0).is_zero());
  CHECK(G.at(0, 0, 1) == t2.scaled(F(54)));
  CHECK(G.at(0, 1, 0) == c(1, 3));
  CHECK(G.at(0, 1, 1).is_zero());
  CHECK(G.at(1, 0, 0) == c(2, 3));
  CHECK(G.at(1, 0, 1).is_zero());
  CHECK(G.at(1, 1, 0).is_zero());
  CHECK(G.at(1, 1, 1) == c(1, 3));

  PencilOptions opt;
  opt.symbolic_curvature = true;
  auto rep = check_pencil(s.g, s.eta, G, opt);
  for (const auto& ch : rep.checks) {
    INFO(ch.name);
    CHECK_FALSE(ch.failed());
  }
  CHECK(rep.points_used == 20);
}

TEST_CASE("point oracle") {
  auto deg = DegreeVector::make(Mode::Generic, {F(1)}, F(2));
  Ring r = ring_for(deg, CoeffKind::Rational, 0);
  IntersectionForm g(deg, r, {{GradedPoly::variable(r, 0)}});
  auto v = christoffel_point_oracle(g, {F(2)});
  CHECK(v[0] == CoeffElem::rational(F(1, 2)));

  IntersectionForm c(deg, r, {{GradedPoly::constant(r, F(3))}});
  CHECK(christoffel_point_oracle(c, {F(5)})[0].is_zero());
  CHECK_THROWS_AS(christoffel_point_oracle(g, {F(0)}), DomainError);
}

TEST_CASE("constant metric") {
  auto deg = DegreeVector::make(Mode::Generic, {F(1), F(1, 2)}, F(3, 2));
  Ring r = ring_for(deg, CoeffKind::Rational, 0);
  auto eta = ConstMetric::from_upper({{F(0), F(1)}, {F(1), F(0)}});
  IntersectionForm g(deg, r, constant_matrix(r, eta.upper));
  auto G = christoffel_solve(g, eta);
  for (const auto& e : G.gamma.e) CHECK(e.is_zero());
  PencilOptions opt;
  opt.lambdas = {F(0), F(1), F(2), F(1, 3)};  // g + λη is singular at λ = −1
  auto rep = check_pencil(g, eta, G, opt);
  // ∂₁g = 0 ≠ η, so the unit-derivative check must fail
  CHECK(rep.find("b_unit_derivative")->failed());
  CHECK_FALSE(rep.find("c_torsion")->failed());
  CHECK_FALSE(rep.find("f_curvature")->failed());
}

TEST_CASE("elliptic series metric") {
  Elliptic s;
  auto G = christoffel_solve(s.g, s.eta);
  const auto& e1n = s.eta.upper[0][2];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      CHECK(G.at(a, 2, b).is_zero());
      Fraction want = a == b ? e1n * s.deg.d[static_cast<size_t>(a)] : Fraction(0);
      CHECK(G.at(2, a, b) == GradedPoly::constant(s.ring, want));
    }
  PencilOptions opt;
  opt.symbolic_curvature = true;
  auto rep = check_pencil(s.g, s.eta, G, opt);
  for (const auto& ch : rep.checks) {
    INFO(ch.name);
    CHECK_FALSE(ch.failed());
  }
  CHECK(rep.find("e_elliptic_rows")->status == Status::Pass);
}

TEST_CASE("broken metric with a (t1)^2 term") {
  A2 s;
  auto t1 = GradedPoly::variable(s.ring, 0);
  auto g = s.g;
  g.g[0][0] = g.g[0][0] + t1 * t1;
  Christoffel G{s.deg, Tensor3(2, s.ring)};
  auto rep = check_pencil(g, s.eta, G);
  const auto* a = rep.find("a_second_derivative");
  REQUIRE(a->failed());
  CHECK(a->witnesses[0].index == std::vector<int>{1, 1});
  CHECK_THROWS_AS(christoffel_solve(g, s.eta), SolveError);
}

TEST_CASE("integrate vector potential") {
  auto deg = DegreeVector::make(Mode::Generic, {F(1), F(1), F(1)}, F(2));
  Ring r = ring_for(deg, CoeffKind::Rational, 0);
  auto eta = ConstMetric::from_upper({{F(1), F(0), F(0)}, {F(0), F(1), F(0)}, {F(0), F(0), F(1)}});
  auto t2 = GradedPoly::variable(r, 1);
  GradedPoly f2 = t2 * t2;
  Christoffel G{deg, Tensor3(3, r)};
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c) {
      GradedPoly v(r);
      for (int e = 0; e < 3; ++e) v = v + derive(derive(f2, c), e).scaled(eta.upper[a][e]);
      G.gamma.at(a, 1, c) = v;
    }
  auto f = integrate_vector_potential(G, eta);
  REQUIRE(f[1].has_value());
  CHECK(*f[1] == f2);
  CHECK(f[0]->is_zero());
  CHECK(f[2]->is_zero());

  Christoffel Z{deg, Tensor3(3, r)};
  for (const auto& v : integrate_vector_potential(Z, eta)) CHECK(v->is_zero());

  G.gamma.at(0, 1, 2) = GradedPoly::variable(r, 0);  // breaks potential symmetry
  CHECK_THROWS_AS(integrate_vector_potential(G, eta), VerificationError);
}

TEST_CASE("sampling is deterministic") {
  A2 s;
  std::vector<Fraction> lam{F(0), F(1)};
  auto p1 = sample_points(s.g, s.eta, lam, 5, 7);
  auto p2 = sample_points(s.g, s.eta, lam, 5, 7);
  CHECK(p1 == p2);
  for (const auto& p : p1)
    for (const auto& v : p) {
      CHECK(v.raw().get_den() <= 97);
      CHECK(abs(v.raw().get_num()) <= 97);
    }
}
