#include <doctest.h>

#include "frobenius/errors.hpp"
#include "frobenius/instances.hpp"
#include "sample_metrics.hpp"

using namespace frob;
using samples::F;

namespace {

SeriesSeed chazy_seed(int N) {
  SeriesSeed s;
  s.deg = DegreeVector::make(Mode::Elliptic, {F(1), F(1, 2), F(0)}, F(1));
  s.eta = ConstMetric::from_upper({{F(0), F(0), F(1)}, {F(0), F(1), F(0)}, {F(1), F(0), F(0)}});
  s.truncation = N;
  s.layer0 = {{{0, 4, 0}, F(-1, 96)}};
  s.pins = {{1, {0, 4, 0}, F(1, 4)}};
  return s;
}

// −E2/96 from divisor sums.
std::vector<Fraction> e2_oracle(int N) {
  std::vector<Fraction> a{F(-1, 96)};
  for (int k = 1; k < N; ++k) {
    long sigma = 0;
    for (int d = 1; d <= k; ++d)
      if (k % d == 0) sigma += d;
    a.push_back(F(sigma, 4));
  }
  return a;
}

}  // namespace

TEST_CASE("A1 orbit chart") {
  auto ch = coxeter_chart('A', 1, 7);
  Ring r = ch.g_s.ring;
  CHECK(ch.g_s.at(0, 0) == GradedPoly::variable(r, 0).scaled(F(4)));
  CHECK(ch.J[0][0] == GradedPoly::constant(r, F(4)));
  CHECK(ch.inv.deg.charge == F(2));
  auto rep = check_pencil(ch.g_t, ch.flat.eta, christoffel_solve(ch.g_t, ch.flat.eta));
  CHECK(rep.passed());
}

TEST_CASE("invariant degrees") {
  auto b2 = coxeter_invariants('B', 2);
  CHECK(b2.c == std::vector<int>{4, 2});
  CHECK(b2.deg.d[1] == F(1, 2));
  CHECK(b2.deg.charge == F(3, 2));
  auto a3 = coxeter_invariants('A', 3);
  CHECK(a3.c == std::vector<int>{4, 3, 2});
  auto b3 = coxeter_invariants('B', 3);
  CHECK(b3.deg.d == std::vector<Fraction>{F(1), F(2, 3), F(1, 3)});
  CHECK(b3.deg.charge == F(4, 3));
  CHECK_THROWS_AS(coxeter_invariants('E', 6), DomainError);
}

TEST_CASE("A2 invariants and orbit metric") {
  auto inv = coxeter_invariants('A', 2);
  CHECK_NOTHROW(verify_invariants(inv, 5, 3));
  auto g = orbit_metric(inv, 11);
  Ring r = g.ring;
  auto s2 = GradedPoly::variable(r, 1);
  // s^2 = Σ y², gradient 2y, so g^{22} = 4 s^2
  CHECK(g.at(1, 1) == s2.scaled(F(4)));
  CHECK(g == orbit_metric(inv, 12345));
  auto J = saito_metric(g);
  CHECK(determinant(J) == GradedPoly::constant(r, F(-36)));

  InvariantSystem broken = inv;
  broken.s[1] = broken.s[1] + GradedPoly::variable(broken.s[1].ring(), 0);
  CHECK_THROWS_AS(verify_invariants(broken, 3, 1), DomainError);
}

TEST_CASE("flat coordinates") {
  for (auto [type, rank] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 2}, {'A', 3}, {'B', 3}}) {
    CAPTURE(type);
    CAPTURE(rank);
    auto ch = coxeter_chart(type, rank, 5);
    int n = rank;
    Ring r = ch.g_t.ring;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        CHECK(derive(ch.g_t.at(a, b), 0) == GradedPoly::constant(r, ch.flat.eta.upper[a][b]));
        CHECK(substitute(ch.flat.t_of_s[a], ch.flat.s_of_t, r) == GradedPoly::variable(r, a));
      }
    CHECK(ch.flat.eta.upper[0][n - 1] == F(1));
  }
  // B2: t^1 = s^1 + κ (s^2)^2
  auto b2 = coxeter_chart('B', 2, 5);
  Ring r = b2.g_s.ring;
  CHECK_FALSE(b2.flat.t_of_s[0].coeff({0, 2}).is_zero());
}

TEST_CASE("Coxeter end to end") {
  for (auto [type, rank] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'B', 2}, {'A', 3}}) {
    CAPTURE(type);
    CAPTURE(rank);
    auto ch = coxeter_chart(type, rank, 9);
    auto rep = check_pencil(ch.g_t, ch.flat.eta, christoffel_solve(ch.g_t, ch.flat.eta));
    REQUIRE(rep.passed());
    auto b = build_structure(ch.g_t, ch.flat.eta);
    CHECK(verify_frobenius(b.S).passed());
    CHECK(recover_intersection_form(b.S.F, ch.flat.eta, ch.inv.deg) == ch.g_t);
  }
}

TEST_CASE("A2 build kappa") {
  auto ch = coxeter_chart('A', 2, 9);
  samples::A2 ref;
  CHECK(ch.g_t == ref.g);
  auto b = build_structure(ch.g_t, ch.flat.eta);
  CHECK(b.S.F.F == ref.potential());
}

TEST_CASE("two A2 builds agree up to scaling") {
  auto c1 = coxeter_chart('A', 2, 1);
  auto c2 = coxeter_chart('A', 2, 2, {F(3), F(-5, 2)}, false);
  auto tx1 = c1.t_of_x(), tx2 = c2.t_of_x();
  std::vector<Fraction> lam;
  for (int a = 0; a < 2; ++a) {
    auto it1 = tx1[a].terms().begin();
    Fraction v2 = tx2[a].coeff(it1->first).constant_term();
    lam.push_back(v2 / it1->second.constant_term());
    CHECK(tx2[a] == tx1[a].scaled(lam.back()));
  }
  auto b1 = build_structure(c1.g_t, c1.flat.eta);
  auto b2 = build_structure(c2.g_t, c2.flat.eta);
  // t2 = λ t1 expresses structure 2 in the coordinates of structure 1
  auto aligned = rescale_coordinates(b2.S, lam);
  auto m = match_up_to_scaling(b1.S, aligned);
  CHECK(m.matched);
}

TEST_CASE("Chazy series fixture") {
  auto P = elliptic_series_fixture(chazy_seed(8));
  auto want = e2_oracle(8);
  CoeffElem a = P.F.coeff({0, 4, 0});
  for (int k = 0; k < 8; ++k) CHECK(a.at(k) == want[k]);
  samples::Elliptic ref;
  CHECK(P.F == ref.potential());

  auto P4 = elliptic_series_fixture(chazy_seed(4));
  CoeffElem a4 = P4.F.coeff({0, 4, 0});
  for (int k = 0; k < 4; ++k) CHECK(a4.at(k) == a.at(k));

  auto nopin = chazy_seed(4);
  nopin.pins.clear();
  CHECK_THROWS_WITH_AS(elliptic_series_fixture(nopin), doctest::Contains("not unique"), SolveError);

  auto bad = chazy_seed(4);
  bad.deg = DegreeVector::make(Mode::Generic, {F(1), F(3, 4), F(1, 2)}, F(3, 2));
  CHECK_THROWS_AS(elliptic_series_fixture(bad), DomainError);
}
