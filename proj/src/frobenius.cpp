#include "frobenius/frobenius.hpp"

#include <algorithm>

#include "frobenius/errors.hpp"

namespace frob {

namespace {

std::string idx(std::initializer_list<int> v) {
  std::string s = "(";
  bool first = true;
  for (int i : v) {
    s += (first ? "" : ", ") + std::to_string(i + 1);
    first = false;
  }
  return s + ")";
}

const Ring& ring_of(const Tensor3& T) { return T.e.at(0).ring(); }

Exp unit_square(int n) {
  Exp e(static_cast<size_t>(n), 0);
  e[0] = 2;
  return e;
}

// Solves ∂_n X = p for the D_B variable, ∂_n = ∂/∂t^n + D_B.
GradedPoly antiderivative_dvar(const GradedPoly& p) {
  const Ring& ring = p.ring();
  int v = ring.dvar;
  if (v < 0) throw DomainError("no degree-0 variable to integrate along");
  int orders = ring.kind == CoeffKind::Series ? ring.trunc : 1;
  GradedPoly out(ring);
  // Group by the exponent of the other variables and by q-order.
  std::map<Exp, std::map<int, std::map<int, Fraction>>> groups;  // rest -> j -> k -> coeff
  for (const auto& [e, c] : p.terms()) {
    Exp rest = e;
    rest[static_cast<size_t>(v)] = 0;
    for (int j = 0; j < orders; ++j)
      if (!c.at(j).is_zero()) groups[rest][j][e[static_cast<size_t>(v)]] += c.at(j);
  }
  auto put = [&](const Exp& rest, int j, int k, const Fraction& val) {
    Exp e = rest;
    e[static_cast<size_t>(v)] = k;
    CoeffElem c = ring.kind == CoeffKind::Series ? CoeffElem::q_power(j, ring.trunc).scaled(val) : CoeffElem::rational(val);
    out.add_term(e, c);
  };
  for (const auto& [rest, byj] : groups)
    for (const auto& [j, poly] : byj) {
      if (j == 0) {
        for (const auto& [k, c] : poly) put(rest, 0, k + 1, c / Fraction(k + 1));
        continue;
      }
      // (j + d/dt)^{-1} = Σ_i (−1)^i (d/dt)^i / j^{i+1}
      std::map<int, Fraction> cur = poly;
      Fraction scale = Fraction(1) / Fraction(j);
      while (!cur.empty()) {
        for (const auto& [k, c] : cur) put(rest, j, k, c * scale);
        std::map<int, Fraction> next;
        for (const auto& [k, c] : cur)
          if (k > 0) next[k - 1] += c * Fraction(k);
        cur = std::move(next);
        scale = -scale / Fraction(j);
      }
    }
  return out;
}

GradedPoly raise2(const GradedPoly& F, const ConstMetric& eta, int b, int c) {
  // η^{bε} η^{cμ} ∂_ε ∂_μ F
  GradedPoly acc(F.ring());
  for (int e = 0; e < eta.n; ++e) {
    const Fraction& be = eta.upper[static_cast<size_t>(b)][static_cast<size_t>(e)];
    if (be.is_zero()) continue;
    GradedPoly de = derive(F, e);
    for (int m = 0; m < eta.n; ++m) {
      const Fraction& cm = eta.upper[static_cast<size_t>(c)][static_cast<size_t>(m)];
      if (!cm.is_zero()) acc = acc + derive(de, m).scaled(be * cm);
    }
  }
  return acc;
}

}  // namespace

Tensor3 structure_constants(const Christoffel& gamma, const ConstMetric& eta, const DegreeVector& deg) {
  int n = deg.n;
  const Ring& ring = ring_of(gamma.gamma);
  std::vector<int> degenerate = deg.degenerate();
  std::vector<int> expected;
  if (deg.mode == Mode::Elliptic) expected = {n - 1};
  if (degenerate != expected) throw DomainError("structure_constants: degenerate index set differs from the mode's");
  for (int b : degenerate)
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c)
        if (!gamma.at(a, b, c).is_zero())
          throw VerificationError("structure_constants: nonzero Γ in degenerate column at " + idx({a, b, c}));
  Tensor3 C(n, ring);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (std::find(degenerate.begin(), degenerate.end(), b) != degenerate.end()) {
          if (a == c) C.at(a, b, c) = GradedPoly::constant(ring, eta.upper[0][static_cast<size_t>(b)]);
          continue;
        }
        C.at(a, b, c) = gamma.at(a, b, c).scaled(Fraction(1) / deg.divisor(b));
      }
  return C;
}

Potential build_potential(const std::vector<std::optional<GradedPoly>>& f, const ConstMetric& eta,
                          const DegreeVector& deg, const Ring& ring) {
  int n = deg.n;
  if (static_cast<int>(f.size()) != n) throw ShapeError("build_potential: wrong number of vector-potential entries");
  std::vector<int> degenerate = deg.degenerate();
  Potential P;
  for (int g = 0; g < n; ++g) {
    bool deg_g = std::find(degenerate.begin(), degenerate.end(), g) != degenerate.end();
    if (!deg_g) {
      if (!f[static_cast<size_t>(g)]) throw ShapeError("build_potential: missing f^" + std::to_string(g + 1));
      P.Fvec.push_back(f[static_cast<size_t>(g)]->scaled(Fraction(1) / deg.divisor(g)));
      continue;
    }
    // F^n = ½ η^{1n} η_{αβ} t^α t^β
    GradedPoly q(ring);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const Fraction& l = eta.lower[static_cast<size_t>(a)][static_cast<size_t>(b)];
        if (!l.is_zero()) q = q + (GradedPoly::variable(ring, a) * GradedPoly::variable(ring, b)).scaled(l);
      }
    P.Fvec.push_back(q.scaled(eta.upper[0][static_cast<size_t>(g)] / Fraction(2)));
  }
  // integrability: η^{βε} ∂_ε F^γ = η^{γε} ∂_ε F^β
  auto lowered = [&](int b, int g) {
    GradedPoly acc(ring);
    for (int e = 0; e < n; ++e) {
      const Fraction& be = eta.upper[static_cast<size_t>(b)][static_cast<size_t>(e)];
      if (!be.is_zero()) acc = acc + derive(P.Fvec[static_cast<size_t>(g)], e).scaled(be);
    }
    return acc;
  };
  for (int b = 0; b < n; ++b)
    for (int g = b + 1; g < n; ++g)
      if (!(lowered(b, g) == lowered(g, b)))
        throw VerificationError("build_potential: integrability fails for (β, γ) = " + idx({b, g}));
  GradedPoly F(ring);
  for (int m = 0; m < n; ++m) {
    const Fraction& dm = deg.d[static_cast<size_t>(m)];
    if (dm.is_zero()) continue;
    GradedPoly inner(ring);
    for (int b = 0; b < n; ++b) {
      const Fraction& l = eta.lower[static_cast<size_t>(m)][static_cast<size_t>(b)];
      if (!l.is_zero()) inner = inner + P.Fvec[static_cast<size_t>(b)].scaled(l);
    }
    F = F + (GradedPoly::variable(ring, m) * inner).scaled(dm);
  }
  F = F.scaled(Fraction(1) / (Fraction(1) + deg.charge));
  for (int b = 0; b < n; ++b) {
    GradedPoly acc(ring);
    for (int m = 0; m < n; ++m) {
      const Fraction& bm = eta.upper[static_cast<size_t>(b)][static_cast<size_t>(m)];
      if (!bm.is_zero()) acc = acc + derive(F, m).scaled(bm);
    }
    if (!(acc == P.Fvec[static_cast<size_t>(b)]))
      throw VerificationError("build_potential: η^{βμ}∂_μF ≠ F^β at β = " + std::to_string(b + 1));
  }
  Fraction removed = normalize_potential(F);
  P.F = std::move(F);
  P.note = "coefficient of (t1)^2 normalized to 0 (removed " + removed.str() + ")";
  return P;
}

Fraction normalize_potential(GradedPoly& F) {
  Exp e = unit_square(F.ring().nvars);
  CoeffElem c = F.coeff(e);
  Fraction k = c.constant_term();
  if (!k.is_zero()) F.add_term(e, F.ring().lift(-k));
  return k;
}

GradedPoly potential_from_structure_constants(const Tensor3& C, const ConstMetric& eta, const DegreeVector& deg,
                                              const Fraction& free_constant) {
  int n = deg.n;
  const Ring& ring = ring_of(C);
  Fraction w = Fraction(1) + deg.charge;
  auto lowc = [&](int a, int b, int g) {
    GradedPoly acc(ring);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        Fraction k = eta.lower[static_cast<size_t>(a)][static_cast<size_t>(x)] *
                     eta.lower[static_cast<size_t>(b)][static_cast<size_t>(y)];
        if (!k.is_zero()) acc = acc + C.at(x, y, g).scaled(k);
      }
    return acc;
  };
  auto t = [&](int i) { return GradedPoly::variable(ring, i); };
  std::vector<std::vector<GradedPoly>> H(static_cast<size_t>(n), std::vector<GradedPoly>(static_cast<size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      std::vector<GradedPoly> c;
      for (int g = 0; g < n; ++g) c.push_back(lowc(a, b, g));
      Fraction k = w - deg.d[static_cast<size_t>(a)] - deg.d[static_cast<size_t>(b)];
      GradedPoly h(ring);
      if (!k.is_zero()) {
        for (int g = 0; g < n; ++g)
          if (!deg.d[static_cast<size_t>(g)].is_zero()) h = h + (t(g) * c[static_cast<size_t>(g)]).scaled(deg.d[static_cast<size_t>(g)]);
        h = h.scaled(Fraction(1) / k);
      } else {
        h = antiderivative_dvar(c[static_cast<size_t>(ring.dvar)]) + GradedPoly::constant(ring, free_constant);
      }
      for (int g = 0; g < n; ++g)
        if (!(derive(h, g) == c[static_cast<size_t>(g)]))
          throw VerificationError("third derivatives not integrable at " + idx({a, b, g}));
      H[static_cast<size_t>(a)][static_cast<size_t>(b)] = h;
      H[static_cast<size_t>(b)][static_cast<size_t>(a)] = h;
    }
  std::vector<GradedPoly> G;
  for (int a = 0; a < n; ++a) {
    Fraction k = w - deg.d[static_cast<size_t>(a)];
    if (!(k > Fraction(0))) throw DomainError("non-positive degree of ∂_a F");
    GradedPoly acc(ring);
    for (int b = 0; b < n; ++b)
      if (!deg.d[static_cast<size_t>(b)].is_zero()) acc = acc + (t(b) * H[static_cast<size_t>(a)][static_cast<size_t>(b)]).scaled(deg.d[static_cast<size_t>(b)]);
    G.push_back(acc.scaled(Fraction(1) / k));
  }
  GradedPoly F(ring);
  for (int a = 0; a < n; ++a)
    if (!deg.d[static_cast<size_t>(a)].is_zero()) F = F + (t(a) * G[static_cast<size_t>(a)]).scaled(deg.d[static_cast<size_t>(a)]);
  F = F.scaled(Fraction(1) / w);
  for (int a = 0; a < n; ++a)
    if (!(derive(F, a) == G[static_cast<size_t>(a)]))
      throw VerificationError("first derivatives not integrable at a = " + std::to_string(a + 1));
  return F;
}

Tensor3 structure_from_potential(const GradedPoly& F, const ConstMetric& eta) {
  int n = eta.n;
  Tensor3 C(n, F.ring());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      GradedPoly r = raise2(F, eta, a, b);
      for (int c = 0; c < n; ++c) C.at(a, b, c) = derive(r, c);
    }
  return C;
}

FrobeniusStructure structure_from_potential(const GradedPoly& F, const ConstMetric& eta, const DegreeVector& deg) {
  FrobeniusStructure S{eta, deg, structure_from_potential(F, eta), {}, CoeffElem::rational(Fraction(1))};
  S.F.F = F;
  for (int b = 0; b < eta.n; ++b) {
    GradedPoly acc(F.ring());
    for (int m = 0; m < eta.n; ++m) {
      const Fraction& bm = eta.upper[static_cast<size_t>(b)][static_cast<size_t>(m)];
      if (!bm.is_zero()) acc = acc + derive(F, m).scaled(bm);
    }
    S.F.Fvec.push_back(std::move(acc));
  }
  return S;
}

const CheckResult* FrobeniusReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

FrobeniusReport verify_frobenius(const FrobeniusStructure& S) {
  const DegreeVector& deg = S.deg;
  int n = deg.n;
  const Ring& ring = S.F.F.ring();
  const Tensor3& C = S.C;
  FrobeniusReport rep;
  auto zero_or_fail = [](CheckResult& chk, const GradedPoly& p, std::vector<int> w) {
    if (!p.is_zero()) chk.fail({std::move(w), p, {}});
  };
  {
    CheckResult c("commutativity");
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int g = 0; g < n; ++g) zero_or_fail(c, C.at(a, b, g) - C.at(b, a, g), one_based({a, b, g}));
    rep.checks.push_back(std::move(c));
  }
  {
    CheckResult c("wdvv");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int d = b + 1; d < n; ++d)
          for (int m = 0; m < n; ++m) {
            GradedPoly r(ring);
            for (int g = 0; g < n; ++g) r = r + C.at(a, b, g) * C.at(g, d, m) - C.at(a, d, g) * C.at(g, b, m);
            zero_or_fail(c, r, one_based({a, b, d, m}));
          }
    rep.checks.push_back(std::move(c));
  }
  {
    CheckResult c("unit");
    for (int a = 0; a < n; ++a)
      for (int g = 0; g < n; ++g) {
        GradedPoly acc(ring);
        for (int b = 0; b < n; ++b) {
          const Fraction& l = S.eta.lower[0][static_cast<size_t>(b)];
          if (!l.is_zero()) acc = acc + C.at(a, b, g).scaled(l);
        }
        acc = acc.scaled(S.unit_scale);
        if (a == g) acc = acc - GradedPoly::constant(ring, Fraction(1));
        zero_or_fail(c, acc, one_based({a, g}));
      }
    rep.checks.push_back(std::move(c));
  }
  {
    // c_{abg} = η_{aα} η_{bβ} Ĉ^{αβ}_g totally symmetric
    CheckResult c("symmetry");
    std::vector<GradedPoly> low(static_cast<size_t>(n * n * n), GradedPoly(ring));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int g = 0; g < n; ++g) {
          GradedPoly acc(ring);
          for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
              Fraction k = S.eta.lower[static_cast<size_t>(a)][static_cast<size_t>(x)] *
                           S.eta.lower[static_cast<size_t>(b)][static_cast<size_t>(y)];
              if (!k.is_zero()) acc = acc + C.at(x, y, g).scaled(k);
            }
          low[static_cast<size_t>((a * n + b) * n + g)] = std::move(acc);
        }
    auto L = [&](int a, int b, int g) -> const GradedPoly& { return low[static_cast<size_t>((a * n + b) * n + g)]; };
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int g = 0; g < n; ++g) {
          zero_or_fail(c, L(a, b, g) - L(b, a, g), one_based({a, b, g}));
          zero_or_fail(c, L(a, b, g) - L(a, g, b), one_based({a, b, g}));
        }
    rep.checks.push_back(std::move(c));
  }
  {
    CheckResult c("potentiality");
    Tensor3 D = structure_from_potential(S.F.F, S.eta);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int g = 0; g < n; ++g) zero_or_fail(c, C.at(a, b, g) - D.at(a, b, g), one_based({a, b, g}));
    rep.checks.push_back(std::move(c));
  }
  {
    CheckResult c("flat_metric");
    c.detail = "η is a constant matrix in flat coordinates";
    if (!(S.eta.upper == invert(S.eta.lower))) c.fail({{}, {}, "η_{αβ} is not the inverse of η^{αβ}"});
    rep.checks.push_back(std::move(c));
  }
  {
    CheckResult c("flat_unit");
    c.detail = "e = u ∂_1 with u = " + S.unit_scale.str();
    if (!S.unit_scale.is_constant() || !S.unit_scale.is_unit()) c.fail({{}, {}, "u is not a nonzero constant"});
    rep.checks.push_back(std::move(c));
  }
  {
    CheckResult c("homogeneity");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int g = 0; g < n; ++g)
          if (!is_homogeneous(C.at(a, b, g), connection_degree(deg, a, b, g), deg))
            c.fail({one_based({a, b, g}), C.at(a, b, g), "degree law"});
    GradedPoly r = euler(S.F.F, deg) - S.F.F.scaled(Fraction(1) + deg.charge);
    if (!r.is_zero()) c.fail({{}, r, "E F ≠ (1 + D) F"});
    if (deg.d[0] != Fraction(1)) c.fail({{}, {}, "d^1 ≠ 1, so [E, e] ≠ −e"});
    rep.checks.push_back(std::move(c));
  }
  {
    CheckResult c("eta_pairing");
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        if (!S.eta.upper[static_cast<size_t>(a)][static_cast<size_t>(b)].is_zero() &&
            deg.d[static_cast<size_t>(a)] + deg.d[static_cast<size_t>(b)] != deg.charge)
          c.fail({one_based({a, b}), {}, "η^{αβ} ≠ 0 with d^α + d^β ≠ D"});
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

IntersectionForm recover_intersection_form(const GradedPoly& F, const ConstMetric& eta, const DegreeVector& deg) {
  int n = deg.n;
  PolyMatrix g(static_cast<size_t>(n), std::vector<GradedPoly>(static_cast<size_t>(n), GradedPoly(F.ring())));
  for (int b = 0; b < n; ++b)
    for (int c = b; c < n; ++c) {
      GradedPoly v = euler(raise2(F, eta, b, c), deg);
      g[static_cast<size_t>(b)][static_cast<size_t>(c)] = v;
      g[static_cast<size_t>(c)][static_cast<size_t>(b)] = v;
    }
  return IntersectionForm(deg, F.ring(), std::move(g));
}

FrobeniusStructure scale_structure(const FrobeniusStructure& S, const Fraction& c) {
  if (c.is_zero()) throw DomainError("scale_structure: c must be nonzero");
  FrobeniusStructure R = S;
  for (auto& row : R.eta.upper)
    for (auto& v : row) v *= c;
  for (auto& row : R.eta.lower)
    for (auto& v : row) v /= c;
  R.F.F = S.F.F.scaled(Fraction(1) / (c * c));
  for (auto& p : R.F.Fvec) p = p.scaled(Fraction(1) / c);
  R.unit_scale = S.unit_scale.scaled(c);
  return R;
}

MatchResult match_up_to_scaling(const FrobeniusStructure& S1, const FrobeniusStructure& S2) {
  if (S1.deg.n != S2.deg.n) throw DomainError("match_up_to_scaling: dimensions differ");
  if (!(S1.deg == S2.deg)) throw DomainError("match_up_to_scaling: degree vectors differ (different Euler fields)");
  MatchResult m;
  int n = S1.deg.n;
  int col = -1;
  for (int b = 0; b < n && col < 0; ++b)
    if (!S1.eta.upper[0][static_cast<size_t>(b)].is_zero()) col = b;
  if (col < 0 || S2.eta.upper[0][static_cast<size_t>(col)].is_zero()) {
    m.mismatch = "η on the unit row";
    return m;
  }
  m.c = S2.eta.upper[0][static_cast<size_t>(col)] / S1.eta.upper[0][static_cast<size_t>(col)];
  FrobeniusStructure T = scale_structure(S1, m.c);
  if (!(T.unit_scale == S2.unit_scale)) {
    m.mismatch = "unit: c from η does not match u2/u1";
    return m;
  }
  if (!(T.eta.upper == S2.eta.upper)) {
    m.mismatch = "eta";
    return m;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int g = 0; g < n; ++g)
        if (!(T.C.at(a, b, g) == S2.C.at(a, b, g))) {
          m.mismatch = "C" + idx({a, b, g});
          return m;
        }
  if (!(T.F.F == S2.F.F)) {
    m.mismatch = "F";
    return m;
  }
  m.matched = true;
  return m;
}

FrobeniusStructure rescale_coordinates(const FrobeniusStructure& S, const std::vector<Fraction>& lambda) {
  int n = S.deg.n;
  if (static_cast<int>(lambda.size()) != n) throw ShapeError("rescale_coordinates: wrong number of factors");
  for (const auto& l : lambda)
    if (l.is_zero()) throw DomainError("rescale_coordinates: zero factor");
  auto pull = [&](const GradedPoly& p) {
    GradedPoly r(p.ring());
    for (const auto& [e, c] : p.terms()) {
      Fraction k(1);
      for (size_t i = 0; i < e.size(); ++i)
        for (int j = 0; j < e[i]; ++j) k *= lambda[i];
      r.add_term(e, c.scaled(k));
    }
    return r;
  };
  FrobeniusStructure R = S;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      R.eta.upper[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          S.eta.upper[static_cast<size_t>(a)][static_cast<size_t>(b)] / (lambda[static_cast<size_t>(a)] * lambda[static_cast<size_t>(b)]);
      R.eta.lower[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          S.eta.lower[static_cast<size_t>(a)][static_cast<size_t>(b)] * lambda[static_cast<size_t>(a)] * lambda[static_cast<size_t>(b)];
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int g = 0; g < n; ++g)
        R.C.at(a, b, g) = pull(S.C.at(a, b, g))
                              .scaled(lambda[static_cast<size_t>(g)] / (lambda[static_cast<size_t>(a)] * lambda[static_cast<size_t>(b)]));
  R.F.F = pull(S.F.F);
  for (int b = 0; b < n; ++b) R.F.Fvec[static_cast<size_t>(b)] = pull(S.F.Fvec[static_cast<size_t>(b)]).scaled(Fraction(1) / lambda[static_cast<size_t>(b)]);
  R.unit_scale = S.unit_scale.scaled(Fraction(1) / lambda[0]);
  return R;
}

bool unit_candidate_check(const IntersectionForm& g, const DegreeVector& deg, const CoeffElem& u) {
  if (!(deg == g.deg)) throw ShapeError("unit_candidate_check: degree vector does not match the metric");
  if (u.kind() == CoeffKind::Series && (g.ring.kind != CoeffKind::Series || u.truncation() != g.ring.trunc))
    throw ShapeError("unit_candidate_check: candidate coefficient outside the metric's coefficient ring");
  if (!u.is_unit()) return false;
  // [E, u∂_1] = −d^1 u∂_1 + E(u)∂_1 and E(u) = 0 for a coefficient
  if (deg.d[0] != Fraction(1)) return false;
  GradedPoly U = GradedPoly::constant(g.ring, g.ring.lift(u));
  if (!euler(U, deg).is_zero()) return false;
  CoeffElem u2 = g.ring.lift(u) * g.ring.lift(u);
  for (int a = 0; a < g.n(); ++a)
    for (int b = a; b < g.n(); ++b)
      if (!derive(derive(g.at(a, b), 0), 0).scaled(u2).is_zero()) return false;
  return true;
}

bool unit_candidate_check(const IntersectionForm& g, const DegreeVector& deg, const GradedPoly& u) {
  if (!u.is_constant()) throw ShapeError("unit_candidate_check: candidate must be u·∂_1 with u a degree-0 coefficient");
  if (!(u.ring() == g.ring)) throw ShapeError("unit_candidate_check: candidate ring mismatch");
  return unit_candidate_check(g, deg, u.coeff(Exp(static_cast<size_t>(g.n()), 0)));
}

Build build_structure(const IntersectionForm& g, const ConstMetric& eta) {
  Build b{christoffel_solve(g, eta), {}, {}};
  b.f = integrate_vector_potential(b.gamma, eta);
  b.S.eta = eta;
  b.S.deg = g.deg;
  b.S.C = structure_constants(b.gamma, eta, g.deg);
  b.S.F = build_potential(b.f, eta, g.deg, g.ring);
  b.S.unit_scale = CoeffElem::rational(Fraction(1));
  return b;
}

}  // namespace frob
