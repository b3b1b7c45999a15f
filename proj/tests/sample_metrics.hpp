#pragma once

#include "frobenius/pencil.hpp"

namespace samples {

using namespace frob;

inline Fraction F(long n, long d = 1) { return Fraction(n, d); }

// A2 orbit metric in flat coordinates, power-sum invariants.
struct A2 {
  DegreeVector deg = DegreeVector::make(Mode::Coxeter, {F(1), F(2, 3)}, F(5, 3));
  Ring ring = ring_for(deg, CoeffKind::Rational, 0);
  ConstMetric eta = ConstMetric::from_upper({{F(0), F(1)}, {F(1), F(0)}});
  IntersectionForm g;
  A2() {
    auto t1 = GradedPoly::variable(ring, 0), t2 = GradedPoly::variable(ring, 1);
    g = IntersectionForm(deg, ring, {{(t2 * t2).scaled(F(54)), t1}, {t1, t2.scaled(F(2, 3))}});
  }
  GradedPoly potential() const {
    auto t1 = GradedPoly::variable(ring, 0), t2 = GradedPoly::variable(ring, 1);
    return (t1 * t1 * t2).scaled(F(1, 2)) + (t2 * t2 * t2 * t2).scaled(F(27, 8));
  }
};

// q-expansion of −E2/96 to order q^7.
inline CoeffElem chazy_a() {
  return CoeffElem::series({F(-1, 96), F(1, 4), F(3, 4), F(1), F(7, 4), F(3, 2), F(3), F(2)});
}

// F = ½ t1² t3 + ½ t1 t2² + a(q) t2⁴, truncation 8.
struct Elliptic {
  DegreeVector deg = DegreeVector::make(Mode::Elliptic, {F(1), F(1, 2), F(0)}, F(1));
  Ring ring = ring_for(deg, CoeffKind::Series, 8);
  ConstMetric eta = ConstMetric::from_upper({{F(0), F(0), F(1)}, {F(0), F(1), F(0)}, {F(1), F(0), F(0)}});
  IntersectionForm g;
  Elliptic() {
    CoeffElem a = chazy_a();
    auto t1 = GradedPoly::variable(ring, 0), t2 = GradedPoly::variable(ring, 1);
    auto z = GradedPoly(ring);
    auto m = [&](Exp e, const CoeffElem& c) { return GradedPoly::monomial(ring, e, c); };
    auto g11 = m({0, 4, 0}, a.derivation().derivation().scaled(F(2)));
    auto g12 = m({0, 3, 0}, a.derivation().scaled(F(6)));
    auto g22 = t1 + m({0, 2, 0}, a.scaled(F(12)));
    auto g23 = t2.scaled(F(1, 2));
    g = IntersectionForm(deg, ring, {{g11, g12, t1}, {g12, g22, g23}, {t1, g23, z}});
  }
  GradedPoly potential() const {
    auto m = [&](Exp e, const CoeffElem& c) { return GradedPoly::monomial(ring, e, c); };
    return m({2, 0, 1}, ring.lift(F(1, 2))) + m({1, 2, 0}, ring.lift(F(1, 2))) + m({0, 4, 0}, chazy_a());
  }
};

}  // namespace samples
