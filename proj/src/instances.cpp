#include "frobenius/instances.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "frobenius/errors.hpp"

namespace frob {

namespace {

Fraction random_fraction(std::mt19937_64& rng, long bound) {
  long num = static_cast<long>(rng() % static_cast<uint64_t>(2 * bound + 1)) - bound;
  long den = static_cast<long>(rng() % static_cast<uint64_t>(bound)) + 1;
  return Fraction(num, den);
}

std::vector<Fraction> random_point(std::mt19937_64& rng, int m) {
  std::vector<Fraction> p;
  for (int i = 0; i < m; ++i) p.push_back(random_fraction(rng, 97));
  return p;
}

Fraction pow_frac(const Fraction& x, int k) {
  Fraction r(1);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

Fraction monomial_value(const Exp& e, const std::vector<Fraction>& v) {
  Fraction r(1);
  for (size_t i = 0; i < e.size(); ++i) r *= pow_frac(v[i], e[i]);
  return r;
}

// Signed permutations (type B) or permutations (type A) of the ambient coordinates.
std::vector<std::pair<std::vector<int>, std::vector<int>>> group_elements(char type, int m) {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  std::vector<int> perm(static_cast<size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int signs = type == 'B' ? (1 << m) : 1;
    for (int mask = 0; mask < signs; ++mask) {
      std::vector<int> sg(static_cast<size_t>(m), 1);
      for (int i = 0; i < m; ++i)
        if (mask & (1 << i)) sg[static_cast<size_t>(i)] = -1;
      out.emplace_back(perm, sg);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

int rank_of(const FracMatrix& m) {
  if (m.empty()) return 0;
  LinearSystem ls(static_cast<int>(m[0].size()));
  for (const auto& row : m) {
    SparseRow r;
    for (size_t j = 0; j < row.size(); ++j)
      if (!row[j].is_zero()) r[static_cast<int>(j)] = row[j];
    ls.add(std::move(r), 0);
  }
  return ls.rank();
}

std::vector<std::vector<GradedPoly>> gradients(const InvariantSystem& inv) {
  std::vector<std::vector<GradedPoly>> ds;
  for (const auto& s : inv.s) {
    std::vector<GradedPoly> row;
    for (int a = 0; a < inv.ambient; ++a) row.push_back(derive(s, a));
    ds.push_back(std::move(row));
  }
  return ds;
}

PolyMatrix adjugate(const PolyMatrix& m) {
  size_t n = m.size();
  const Ring& r = m[0][0].ring();
  PolyMatrix adj(n, std::vector<GradedPoly>(n, GradedPoly(r)));
  if (n == 1) {
    adj[0][0] = GradedPoly::constant(r, Fraction(1));
    return adj;
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      PolyMatrix minor;
      for (size_t a = 0; a < n; ++a) {
        if (a == i) continue;
        std::vector<GradedPoly> row;
        for (size_t b = 0; b < n; ++b)
          if (b != j) row.push_back(m[a][b]);
        minor.push_back(std::move(row));
      }
      GradedPoly c = determinant(minor);
      adj[j][i] = (i + j) % 2 ? -c : c;
    }
  return adj;
}

}  // namespace

InvariantSystem coxeter_invariants(char type, int rank, const std::vector<Fraction>& scales) {
  if (!((type == 'A' || type == 'B') && rank >= 1 && rank <= 3))
    throw DomainError(std::string("unsupported Coxeter type ") + type + std::to_string(rank));
  if (!scales.empty() && static_cast<int>(scales.size()) != rank) throw ShapeError("one scale per invariant");
  InvariantSystem inv;
  inv.type = type;
  inv.rank = rank;
  inv.ambient = type == 'A' ? rank + 1 : rank;
  Ring xr = Ring::rational(inv.ambient);
  std::vector<GradedPoly> y;
  if (type == 'A') {
    GradedPoly mean(xr);
    for (int a = 0; a < inv.ambient; ++a) mean = mean + GradedPoly::variable(xr, a);
    mean = mean.scaled(Fraction(1, inv.ambient));
    for (int a = 0; a < inv.ambient; ++a) y.push_back(GradedPoly::variable(xr, a) - mean);
  } else {
    for (int a = 0; a < inv.ambient; ++a) y.push_back(GradedPoly::variable(xr, a));
  }
  for (int i = 0; i < rank; ++i) {
    int k = type == 'A' ? rank + 1 - i : 2 * (rank - i);
    GradedPoly p(xr);
    for (const auto& ya : y) {
      GradedPoly pw = GradedPoly::constant(xr, Fraction(1));
      for (int j = 0; j < k; ++j) pw = pw * ya;
      p = p + pw;
    }
    if (!scales.empty()) p = p.scaled(scales[static_cast<size_t>(i)]);
    inv.s.push_back(std::move(p));
    inv.c.push_back(k);
  }
  std::vector<Fraction> d;
  for (int k : inv.c) d.emplace_back(k, inv.c[0]);
  inv.deg = DegreeVector::make(Mode::Coxeter, d, Fraction(1) + Fraction(2, inv.c[0]));
  return inv;
}

void verify_invariants(const InvariantSystem& inv, int points, uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto ds = gradients(inv);
  auto pt = random_point(rng, inv.ambient);
  FracMatrix jac;
  for (const auto& row : ds) {
    std::vector<Fraction> r;
    for (const auto& p : row) r.push_back(evaluate(p, pt));
    jac.push_back(std::move(r));
  }
  if (rank_of(jac) != inv.rank) throw DomainError("invariants are not algebraically independent");
  auto group = group_elements(inv.type, inv.ambient);
  for (int k = 0; k < points; ++k) {
    auto x = random_point(rng, inv.ambient);
    for (const auto& [perm, sg] : group) {
      std::vector<Fraction> gx(x.size());
      for (size_t a = 0; a < x.size(); ++a) gx[a] = x[static_cast<size_t>(perm[a])] * Fraction(sg[a]);
      for (const auto& s : inv.s)
        if (evaluate(s, gx) != evaluate(s, x)) throw DomainError("invariant is not W-invariant");
    }
  }
}

IntersectionForm orbit_metric(const InvariantSystem& inv, uint64_t seed) {
  const DegreeVector& deg = inv.deg;
  int n = deg.n;
  Ring sr = ring_for(deg, CoeffKind::Rational, 0);
  auto ds = gradients(inv);
  std::mt19937_64 rng(seed);
  struct Sample {
    std::vector<Fraction> s;
    FracMatrix G;
  };
  auto draw = [&]() {
    Sample smp;
    auto x = random_point(rng, inv.ambient);
    for (const auto& p : inv.s) smp.s.push_back(evaluate(p, x));
    std::vector<std::vector<Fraction>> grad;
    for (const auto& row : ds) {
      std::vector<Fraction> r;
      for (const auto& p : row) r.push_back(evaluate(p, x));
      grad.push_back(std::move(r));
    }
    smp.G.assign(static_cast<size_t>(n), std::vector<Fraction>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int a = 0; a < inv.ambient; ++a)
          smp.G[static_cast<size_t>(i)][static_cast<size_t>(j)] += grad[static_cast<size_t>(i)][static_cast<size_t>(a)] * grad[static_cast<size_t>(j)][static_cast<size_t>(a)];
    return smp;
  };
  PolyMatrix g(static_cast<size_t>(n), std::vector<GradedPoly>(static_cast<size_t>(n), GradedPoly(sr)));
  std::vector<Sample> samples;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      auto monos = monomials_of_degree(deg, metric_degree(deg, i, j));
      int cols = static_cast<int>(monos.size());
      GradedPoly p(sr);
      if (cols > 0) {
        LinearSystem ls(cols);
        size_t used = 0;
        while (ls.rank() < cols) {
          if (used >= 200) throw SolveError("orbit_metric: interpolation system stays singular");
          if (used == samples.size()) samples.push_back(draw());
          const Sample& smp = samples[used++];
          SparseRow row;
          for (int m = 0; m < cols; ++m) {
            Fraction v = monomial_value(monos[static_cast<size_t>(m)], smp.s);
            if (!v.is_zero()) row[m] = v;
          }
          ls.add(std::move(row), smp.G[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        }
        auto res = ls.solve();
        if (res.status != LinearSystem::Status::Unique) throw SolveError("orbit_metric: interpolation inconsistent");
        for (int m = 0; m < cols; ++m) p.add_term(monos[static_cast<size_t>(m)], sr.lift(res.x[static_cast<size_t>(m)]));
      }
      g[static_cast<size_t>(i)][static_cast<size_t>(j)] = p;
      g[static_cast<size_t>(j)][static_cast<size_t>(i)] = p;
    }
  for (int k = 0; k < 10; ++k) {
    Sample smp = draw();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (evaluate(g[static_cast<size_t>(i)][static_cast<size_t>(j)], smp.s) != smp.G[static_cast<size_t>(i)][static_cast<size_t>(j)])
          throw VerificationError("orbit_metric: held-out verification failed at (" + std::to_string(i + 1) + ", " +
                                  std::to_string(j + 1) + ")");
  }
  return IntersectionForm(deg, sr, std::move(g));
}

PolyMatrix saito_metric(const IntersectionForm& g_s) {
  const DegreeVector& deg = g_s.deg;
  if (deg.n > 1 && !(deg.d[1] < deg.d[0])) throw DomainError("saito_metric: top degree is tied");
  PolyMatrix J = g_s.g;
  for (auto& row : J)
    for (auto& p : row) p = derive(p, 0);
  GradedPoly det = determinant(J);
  if (det.is_zero() || !det.is_constant()) throw VerificationError("saito_metric: det Ĵ is not a nonzero constant");
  return J;
}

FlatChart flat_coordinates(const IntersectionForm& g_s, const PolyMatrix& J, bool normalize_eta) {
  const DegreeVector& deg = g_s.deg;
  int n = deg.n;
  const Ring& r = g_s.ring;
  Fraction det = determinant(J).coeff(Exp(static_cast<size_t>(n), 0)).constant_term();
  PolyMatrix h = adjugate(J);
  for (auto& row : h)
    for (auto& p : row) p = p.scaled(Fraction(1) / det);
  // Γ̂^l_{jk} = ½ Ĵ^{lm} (∂_j h_{mk} + ∂_k h_{mj} − ∂_m h_{jk})
  std::vector<GradedPoly> chr(static_cast<size_t>(n * n * n), GradedPoly(r));
  auto H = [&](int a, int b) -> const GradedPoly& { return h[static_cast<size_t>(a)][static_cast<size_t>(b)]; };
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        GradedPoly acc(r);
        for (int m = 0; m < n; ++m) {
          const GradedPoly& Jlm = J[static_cast<size_t>(l)][static_cast<size_t>(m)];
          if (Jlm.is_zero()) continue;
          acc = acc + Jlm * (derive(H(m, k), j) + derive(H(m, j), k) - derive(H(j, k), m));
        }
        chr[static_cast<size_t>((l * n + j) * n + k)] = acc.scaled(Fraction(1, 2));
      }
  FlatChart chart;
  for (int a = 0; a < n; ++a) {
    auto monos = monomials_of_degree(deg, deg.d[static_cast<size_t>(a)]);
    int cols = static_cast<int>(monos.size());
    LinearSystem ls(cols);
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        std::map<Exp, SparseRow> rows;
        for (int m = 0; m < cols; ++m) {
          GradedPoly t = GradedPoly::monomial(r, monos[static_cast<size_t>(m)], Fraction(1));
          GradedPoly e = derive(derive(t, j), k);
          for (int l = 0; l < n; ++l) e = e - chr[static_cast<size_t>((l * n + j) * n + k)] * derive(t, l);
          for (const auto& [ex, c] : e.terms()) rows[ex][m] += c.constant_term();
        }
        for (auto& [ex, row] : rows) ls.add(std::move(row), 0);
      }
    auto ns = ls.nullspace();
    int mult = 0;
    for (int b = 0; b < n; ++b)
      if (deg.d[static_cast<size_t>(b)] == deg.d[static_cast<size_t>(a)]) ++mult;
    if (static_cast<int>(ns.size()) != mult)
      throw SolveError("flat_coordinates: solution space dimension " + std::to_string(ns.size()) +
                       " differs from degree multiplicity " + std::to_string(mult));
    Exp lead(static_cast<size_t>(n), 0);
    lead[static_cast<size_t>(a)] = 1;
    auto it = std::find(monos.begin(), monos.end(), lead);
    size_t li = static_cast<size_t>(it - monos.begin());
    const auto& v = ns[0];
    if (mult != 1 || v[li].is_zero()) throw SolveError("flat_coordinates: no solution with leading term s^" + std::to_string(a + 1));
    GradedPoly t(r);
    for (int m = 0; m < cols; ++m) t.add_term(monos[static_cast<size_t>(m)], r.lift(v[static_cast<size_t>(m)] / v[li]));
    chart.t_of_s.push_back(std::move(t));
  }
  auto eta_of = [&]() {
    FracMatrix e(static_cast<size_t>(n), std::vector<Fraction>(static_cast<size_t>(n)));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        GradedPoly acc(r);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            acc = acc + derive(chart.t_of_s[static_cast<size_t>(a)], i) * J[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                            derive(chart.t_of_s[static_cast<size_t>(b)], j);
        if (!acc.is_constant()) throw VerificationError("flat_coordinates: Ĵ*(dt, dt) is not constant");
        e[static_cast<size_t>(a)][static_cast<size_t>(b)] = acc.coeff(Exp(static_cast<size_t>(n), 0)).constant_term();
      }
    return e;
  };
  FracMatrix eta = eta_of();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!eta[static_cast<size_t>(a)][static_cast<size_t>(b)].is_zero() &&
          deg.d[static_cast<size_t>(a)] + deg.d[static_cast<size_t>(b)] != deg.charge)
        throw VerificationError("flat_coordinates: η pairs non-complementary degrees");
  if (normalize_eta) {
    std::vector<Fraction> lam(static_cast<size_t>(n), Fraction(1));
    std::vector<bool> fixed(static_cast<size_t>(n), false);
    fixed[0] = true;
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        const Fraction& e = eta[static_cast<size_t>(a)][static_cast<size_t>(b)];
        if (e.is_zero()) continue;
        if (a == b) {
          Fraction root;
          if (!fixed[static_cast<size_t>(a)] && rational_sqrt(e, root)) lam[static_cast<size_t>(a)] = Fraction(1) / root;
          fixed[static_cast<size_t>(a)] = true;
        } else if (!fixed[static_cast<size_t>(b)]) {
          lam[static_cast<size_t>(b)] = Fraction(1) / (e * lam[static_cast<size_t>(a)]);
          fixed[static_cast<size_t>(b)] = true;
        }
      }
    for (int a = 0; a < n; ++a) chart.t_of_s[static_cast<size_t>(a)] = chart.t_of_s[static_cast<size_t>(a)].scaled(lam[static_cast<size_t>(a)]);
    eta = eta_of();
  }
  chart.eta = ConstMetric::from_upper(eta);

  // ∂t^α/∂s^β: constant nonzero diagonal, zero above the degree
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      GradedPoly d = derive(chart.t_of_s[static_cast<size_t>(a)], b);
      if (a == b && (!d.is_constant() || d.is_zero())) throw VerificationError("flat_coordinates: Jacobian diagonal not constant");
      if (deg.d[static_cast<size_t>(b)] > deg.d[static_cast<size_t>(a)] && !d.is_zero())
        throw VerificationError("flat_coordinates: Jacobian not weighted-triangular");
    }

  // invert t(s) by increasing degree
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return deg.d[static_cast<size_t>(x)] < deg.d[static_cast<size_t>(y)]; });
  chart.s_of_t.assign(static_cast<size_t>(n), GradedPoly(r));
  for (int a : order) {
    const GradedPoly& t = chart.t_of_s[static_cast<size_t>(a)];
    Exp lead(static_cast<size_t>(n), 0);
    lead[static_cast<size_t>(a)] = 1;
    Fraction diag = t.coeff(lead).constant_term();
    GradedPoly rest = t;
    rest.add_term(lead, r.lift(-diag));
    for (const auto& [e, c] : rest.terms())
      if (e[static_cast<size_t>(a)]) throw VerificationError("flat_coordinates: t is not triangular in s");
    GradedPoly sub = substitute(rest, chart.s_of_t, r);
    chart.s_of_t[static_cast<size_t>(a)] = (GradedPoly::variable(r, a) - sub).scaled(Fraction(1) / diag);
  }
  for (int a = 0; a < n; ++a)
    if (!(substitute(chart.t_of_s[static_cast<size_t>(a)], chart.s_of_t, r) == GradedPoly::variable(r, a)))
      throw VerificationError("flat_coordinates: inverse map check failed");
  return chart;
}

IntersectionForm rewrite_in_flat(const IntersectionForm& g_s, const FlatChart& chart) {
  int n = g_s.n();
  const Ring& r = g_s.ring;
  PolyMatrix g(static_cast<size_t>(n), std::vector<GradedPoly>(static_cast<size_t>(n), GradedPoly(r)));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      GradedPoly acc(r);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          acc = acc + derive(chart.t_of_s[static_cast<size_t>(a)], i) * derive(chart.t_of_s[static_cast<size_t>(b)], j) * g_s.at(i, j);
      acc = substitute(acc, chart.s_of_t, r);
      g[static_cast<size_t>(a)][static_cast<size_t>(b)] = acc;
      g[static_cast<size_t>(b)][static_cast<size_t>(a)] = acc;
    }
  return IntersectionForm(g_s.deg, r, std::move(g));
}

std::vector<GradedPoly> OrbitChart::t_of_x() const {
  std::vector<GradedPoly> out;
  for (const auto& t : flat.t_of_s) out.push_back(substitute(t, inv.s, inv.s[0].ring()));
  return out;
}

OrbitChart coxeter_chart(char type, int rank, uint64_t seed, const std::vector<Fraction>& scales, bool normalize_eta) {
  OrbitChart ch;
  ch.inv = coxeter_invariants(type, rank, scales);
  verify_invariants(ch.inv, 10, seed);
  ch.g_s = orbit_metric(ch.inv, seed);
  ch.J = saito_metric(ch.g_s);
  ch.flat = flat_coordinates(ch.g_s, ch.J, normalize_eta);
  ch.g_t = rewrite_in_flat(ch.g_s, ch.flat);
  return ch;
}

GradedPoly unit_cubic(const ConstMetric& eta, const Ring& ring) {
  int n = eta.n;
  auto t = [&](int i) { return GradedPoly::variable(ring, i); };
  auto L = [&](int a, int b) { return eta.lower[static_cast<size_t>(a)][static_cast<size_t>(b)]; };
  GradedPoly F = (t(0) * t(0) * t(0)).scaled(L(0, 0) / Fraction(6));
  for (int b = 1; b < n; ++b) F = F + (t(0) * t(0) * t(b)).scaled(L(0, b) / Fraction(2));
  for (int a = 1; a < n; ++a)
    for (int b = 1; b < n; ++b) F = F + (t(0) * t(a) * t(b)).scaled(L(a, b) / Fraction(2));
  return F;
}

namespace {

std::vector<GradedPoly> wdvv_residuals(const GradedPoly& F, const ConstMetric& eta) {
  int n = eta.n;
  Tensor3 C = structure_from_potential(F, eta);
  std::vector<GradedPoly> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = b + 1; d < n; ++d)
        for (int m = 0; m < n; ++m) {
          GradedPoly r(F.ring());
          for (int g = 0; g < n; ++g) r = r + C.at(a, b, g) * C.at(g, d, m) - C.at(a, d, g) * C.at(g, b, m);
          out.push_back(std::move(r));
        }
  return out;
}

}  // namespace

Potential elliptic_series_fixture(const SeriesSeed& seed) {
  const DegreeVector& deg = seed.deg;
  if (deg.mode != Mode::Elliptic) throw DomainError("elliptic_series_fixture: degree vector is not in elliptic mode");
  deg.validate();
  int n = deg.n, N = seed.truncation;
  if (N < 1) throw DomainError("elliptic_series_fixture: truncation must be positive");
  if (seed.eta.n != n) throw ShapeError("elliptic_series_fixture: eta dimension mismatch");
  Ring ring = ring_for(deg, CoeffKind::Series, N);
  std::vector<bool> skip(static_cast<size_t>(n), false);
  skip[0] = true;
  skip[static_cast<size_t>(n - 1)] = true;
  auto basis = monomials_of_degree(deg, Fraction(1) + deg.charge, skip);

  GradedPoly F = unit_cubic(seed.eta, ring);
  for (const auto& [e, v] : seed.layer0) {
    if (std::find(basis.begin(), basis.end(), e) == basis.end())
      throw DomainError("elliptic_series_fixture: seed term outside the degree-2 ansatz");
    F.add_term(e, ring.lift(v));
  }
  for (const auto& p : seed.pins)
    if (p.order < 1 || p.order >= N || std::find(basis.begin(), basis.end(), p.exp) == basis.end())
      throw DomainError("elliptic_series_fixture: gauge pin outside the ansatz");

  for (const auto& r : wdvv_residuals(truncate(F, 1), seed.eta))
    if (!r.is_zero()) throw SolveError("elliptic_series_fixture: seed layer violates WDVV at order 0");

  int cols = static_cast<int>(basis.size());
  for (int k = 1; k < N && cols > 0; ++k) {
    GradedPoly Fk = truncate(F, k + 1);
    auto r0 = wdvv_residuals(Fk, seed.eta);
    for (const auto& r : r0)
      for (const auto& [e, c] : r.terms())
        for (int j = 0; j < k; ++j)
          if (!c.at(j).is_zero()) throw SolveError("elliptic_series_fixture: lower order residual reappeared");
    Ring rk = Fk.ring();
    std::vector<std::vector<GradedPoly>> lin;
    for (const auto& m : basis) {
      auto rm = wdvv_residuals(Fk + GradedPoly::monomial(rk, m, CoeffElem::q_power(k, k + 1)), seed.eta);
      for (size_t i = 0; i < rm.size(); ++i) rm[i] = rm[i] - r0[i];
      lin.push_back(std::move(rm));
    }
    LinearSystem ls(cols);
    for (size_t i = 0; i < r0.size(); ++i) {
      std::map<Exp, SparseRow> rows;
      std::map<Exp, Fraction> rhs;
      for (int m = 0; m < cols; ++m)
        for (const auto& [e, c] : lin[static_cast<size_t>(m)][i].terms()) rows[e][m] += c.at(k);
      for (const auto& [e, c] : r0[i].terms()) {
        rows[e];
        rhs[e] = -c.at(k);
      }
      for (auto& [e, row] : rows) ls.add(std::move(row), rhs.count(e) ? rhs[e] : Fraction(0));
    }
    for (const auto& p : seed.pins)
      if (p.order == k) {
        int m = static_cast<int>(std::find(basis.begin(), basis.end(), p.exp) - basis.begin());
        ls.add({{m, Fraction(1)}}, p.value);
      }
    auto res = ls.solve();
    if (res.status == LinearSystem::Status::Inconsistent)
      throw SolveError("elliptic_series_fixture: no solution at order q^" + std::to_string(k) + " (inconsistent seed data)");
    if (res.status == LinearSystem::Status::Underdetermined)
      throw SolveError("elliptic_series_fixture: solution not unique at order q^" + std::to_string(k) +
                       " and no gauge pin given");
    for (int m = 0; m < cols; ++m)
      F.add_term(basis[static_cast<size_t>(m)], CoeffElem::q_power(k, N).scaled(res.x[static_cast<size_t>(m)]));
  }
  Potential P;
  P.F = F;
  for (int b = 0; b < n; ++b) {
    GradedPoly acc(ring);
    for (int m = 0; m < n; ++m) {
      const Fraction& bm = seed.eta.upper[static_cast<size_t>(b)][static_cast<size_t>(m)];
      if (!bm.is_zero()) acc = acc + derive(F, m).scaled(bm);
    }
    P.Fvec.push_back(std::move(acc));
  }
  P.note = "WDVV solved order by order to q^" + std::to_string(N - 1);
  return P;
}

}  // namespace frob
