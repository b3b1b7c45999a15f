#include <doctest.h>

#include <random>

#include "frobenius/codec.hpp"
#include "frobenius/errors.hpp"
#include "frobenius/linsolve.hpp"
#include "frobenius/poly.hpp"

using namespace frob;

namespace {

Fraction F(long n, long d = 1) { return Fraction(n, d); }

DegreeVector elliptic3() { return DegreeVector::make(Mode::Elliptic, {F(1), F(1, 2), F(0)}, F(1)); }

Ring series3(int n) { return Ring::series(3, n, 2); }

GradedPoly random_poly(std::mt19937_64& rng, const Ring& ring) {
  GradedPoly p(ring);
  int terms = static_cast<int>(rng() % 4) + 1;
  for (int i = 0; i < terms; ++i) {
    Exp e(static_cast<size_t>(ring.nvars));
    for (auto& v : e) v = static_cast<int>(rng() % 3);
    CoeffElem c;
    if (ring.kind == CoeffKind::Series) {
      std::vector<Fraction> v(static_cast<size_t>(ring.trunc));
      for (auto& x : v) x = F(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 4) + 1);
      c = CoeffElem::series(v);
    } else {
      c = CoeffElem::rational(F(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 4) + 1));
    }
    p.add_term(e, c);
  }
  return p;
}

}  // namespace

TEST_CASE("fraction parsing and canonical form") {
  CHECK(Fraction::parse("6/4").str() == "3/2");
  CHECK(Fraction::parse("-0/5").str() == "0");
  CHECK(Fraction::parse("7").str() == "7");
  CHECK_THROWS_AS(Fraction::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Fraction::parse("1.5"), ParseError);
  CHECK((F(1, 2) + F(1, 3)) == F(5, 6));
  Fraction r;
  CHECK(rational_sqrt(F(9, 4), r));
  CHECK(r == F(3, 2));
  CHECK_FALSE(rational_sqrt(F(2), r));
}

TEST_CASE("combine") {
  Ring r = Ring::rational(2);
  auto t1 = GradedPoly::variable(r, 0), t2 = GradedPoly::variable(r, 1);
  CHECK((t1 + t2) * (t1 - t2) == t1 * t1 - t2 * t2);

  auto s = CoeffElem::series({F(1), F(1)});
  CHECK((s * s).coeffs() == std::vector<Fraction>{F(1), F(2)});

  auto a = GradedPoly::constant(Ring::series(1, 2, -1), F(1));
  auto b = GradedPoly::constant(Ring::series(1, 3, -1), F(1));
  CHECK_THROWS_AS(a + b, RingMismatch);
  CHECK_THROWS_AS(CoeffElem::series({F(1), F(1)}) + CoeffElem::series({F(1)}), RingMismatch);
}

TEST_CASE("derive") {
  Ring r = Ring::rational(2);
  auto t1 = GradedPoly::variable(r, 0), t2 = GradedPoly::variable(r, 1);
  CHECK(derive(t1 * t2, 0) == t2);
  CHECK(derive(GradedPoly::constant(r, F(5)), 1).is_zero());
  CHECK_THROWS_AS(derive(t1, 2), IndexError);

  Ring e = series3(4);
  auto qt2 = GradedPoly::monomial(e, {0, 1, 0}, CoeffElem::q_power(1, 4));
  CHECK(derive(qt2, 2) == qt2);
  // t^3 still differentiates as a variable
  auto t3 = GradedPoly::variable(e, 2);
  CHECK(derive(t3 * qt2, 2) == qt2 + t3 * qt2);
}

TEST_CASE("euler and homogeneous parts") {
  auto deg = elliptic3();
  Ring r = series3(3);
  auto m = GradedPoly::monomial(r, {1, 2, 0}, F(1));
  CHECK(euler(m, deg) == m.scaled(F(2)));
  auto c = GradedPoly::constant(r, CoeffElem::series({F(1), F(2), F(3)}));
  CHECK(euler(c, deg).is_zero());

  auto p = GradedPoly::variable(r, 0) + GradedPoly::monomial(r, {0, 2, 0}, F(1)) +
           GradedPoly::monomial(r, {0, 1, 0}, F(3));
  auto h1 = homogeneous_part(p, F(1), deg);
  CHECK(h1 == GradedPoly::variable(r, 0) + GradedPoly::monomial(r, {0, 2, 0}, F(1)));
  GradedPoly sum(r);
  for (const auto& d : degrees_present(p, deg)) sum = sum + homogeneous_part(p, d, deg);
  CHECK(sum == p);
  CHECK(homogeneous_part(GradedPoly(r), F(1), deg).is_zero());
  CHECK(is_homogeneous(h1, F(1), deg));
}

TEST_CASE("evaluate") {
  Ring r = Ring::rational(2);
  auto t1 = GradedPoly::variable(r, 0), t2 = GradedPoly::variable(r, 1);
  CHECK(evaluate(t1 * t2, {F(2), F(3)}) == F(6));
  CHECK(evaluate(GradedPoly(r), {F(2), F(3)}) == F(0));
  Ring s = Ring::series(1, 2, -1);
  auto qt = GradedPoly::monomial(s, {1}, CoeffElem::q_power(1, 2));
  CHECK(evaluate(qt, {F(1)}, F(1, 2)) == F(1, 2));
  CHECK_THROWS_AS(evaluate(qt, {F(1)}), DomainError);
  CHECK(evaluate_coeff(qt, {F(3)}) == CoeffElem::series({F(0), F(3)}));
}

TEST_CASE("ring laws, mixed partials, euler Leibniz, truncation coherence") {
  std::mt19937_64 rng(12345);
  auto deg = elliptic3();
  for (int trial = 0; trial < 40; ++trial) {
    Ring r = series3(8);
    auto a = random_poly(rng, r), b = random_poly(rng, r), c = random_poly(rng, r);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(derive(derive(a, i), j) == derive(derive(a, j), i));
    CHECK(euler(a * b, deg) == euler(a, deg) * b + a * euler(b, deg));
    for (const auto& d : degrees_present(a, deg)) {
      auto h = homogeneous_part(a, d, deg);
      CHECK(euler(h, deg) == h.scaled(d));
    }
    auto a4 = truncate(a, 4), b4 = truncate(b, 4);
    CHECK(truncate(a * b, 4) == a4 * b4);
    CHECK(truncate(a + b, 4) == a4 + b4);
    for (int i = 0; i < 3; ++i) CHECK(truncate(derive(a, i), 4) == derive(a4, i));
  }
}

TEST_CASE("series inverse") {
  auto s = CoeffElem::series({F(2), F(1), F(-3), F(1, 2)});
  CHECK(s * s.inverse() == CoeffElem::series_constant(F(1), 4));
  CHECK_THROWS_AS(CoeffElem::series({F(0), F(1)}).inverse(), DomainError);
}

TEST_CASE("substitute") {
  Ring r = Ring::rational(2);
  auto t1 = GradedPoly::variable(r, 0), t2 = GradedPoly::variable(r, 1);
  auto p = t1 * t2 + t2 * t2;
  auto img = substitute(p, {t1 + t2, t2.scaled(F(2))}, r);
  CHECK(img == (t1 + t2) * t2.scaled(F(2)) + t2 * t2.scaled(F(4)));
}

TEST_CASE("monomial enumeration") {
  auto deg = DegreeVector::make(Mode::Generic, {F(1), F(2, 3)}, F(5, 3));
  auto ms = monomials_of_degree(deg, F(2), {});
  CHECK(ms == std::vector<Exp>{{0, 3}, {2, 0}});
  CHECK(monomials_of_degree(deg, F(-1, 3)).empty());
  CHECK_THROWS_AS(monomials_of_degree(elliptic3(), F(1)), DomainError);
  CHECK(monomials_of_degree(elliptic3(), F(1), {false, false, true}).size() == 2);
}

TEST_CASE("degree vector invariants") {
  CHECK_THROWS_WITH_AS(DegreeVector::make(Mode::Elliptic, {F(1), F(1, 2), F(1, 4)}, F(1)), "d^n must be 0",
                       DomainError);
  CHECK_THROWS_AS(DegreeVector::make(Mode::Generic, {F(2), F(1)}, F(1)), DomainError);
  auto d = elliptic3();
  CHECK(d.degenerate() == std::vector<int>{2});
  auto a2 = DegreeVector::make(Mode::Coxeter, {F(1), F(2, 3)}, F(5, 3));
  CHECK(a2.degenerate().empty());
  CHECK(a2.divisor(1) == F(1, 3));
}

TEST_CASE("linear system") {
  LinearSystem ls(3);
  ls.add({{0, F(1)}, {1, F(1)}}, F(3));
  ls.add({{1, F(1)}, {2, F(-1)}}, F(1));
  ls.add({{0, F(1)}, {2, F(1)}}, F(2));
  CHECK(ls.solve().status == LinearSystem::Status::Underdetermined);
  ls.add({{2, F(2)}}, F(1));
  auto r = ls.solve();
  REQUIRE(r.status == LinearSystem::Status::Unique);
  CHECK(r.x == std::vector<Fraction>{F(3, 2), F(3, 2), F(1, 2)});
  ls.add({{0, F(1)}}, F(0));
  CHECK(ls.solve().status == LinearSystem::Status::Inconsistent);

  LinearSystem h(3);
  h.add({{0, F(1)}, {1, F(-2)}}, F(0));
  auto ns = h.nullspace();
  CHECK(ns.size() == 2);

  FracMatrix m{{F(2), F(1)}, {F(1), F(1)}};
  CHECK(determinant(m) == F(1));
  CHECK(invert(m) == FracMatrix{{F(1), F(-1)}, {F(-1), F(2)}});
}

TEST_CASE("poly codec round trip") {
  Ring r = series3(3);
  auto p = GradedPoly::monomial(r, {1, 0, 1}, CoeffElem::series({F(1, 2), F(0), F(-3)})) +
           GradedPoly::monomial(r, {0, 4, 0}, F(7));
  auto j = poly_to_json(p);
  CHECK(poly_from_json(j, r, "$") == p);
  CHECK(j.dump() == poly_to_json(poly_from_json(json::parse(j.dump()), r, "$")).dump());
  // short exponent vectors in the elliptic ring are padded on t^n
  auto k = json::parse(R"([{"coeff":"1","exp":[0,4]}])");
  CHECK(poly_from_json(k, r, "$") == GradedPoly::monomial(r, {0, 4, 0}, F(1)));
  auto bad = json::parse(R"([{"coeff":"1","exp":[0,4], "extra":1}])");
  CHECK_THROWS_WITH_AS(poly_from_json(bad, r, "$"), "$[0]: unknown field \"extra\"", ParseError);
}
