#include "frobenius/pencil.hpp"

#include <numeric>

#include "frobenius/errors.hpp"

namespace frob {

Ring ring_for(const DegreeVector& deg, CoeffKind kind, int trunc) {
  int dvar = deg.mode == Mode::Elliptic ? deg.n - 1 : -1;
  if (kind == CoeffKind::Series) return Ring::series(deg.n, trunc, dvar);
  Ring r = Ring::rational(deg.n);
  r.dvar = dvar;
  return r;
}

ConstMetric ConstMetric::from_upper(FracMatrix upper) {
  ConstMetric m;
  m.n = static_cast<int>(upper.size());
  for (const auto& row : upper)
    if (static_cast<int>(row.size()) != m.n) throw ShapeError("eta must be square");
  for (int a = 0; a < m.n; ++a)
    for (int b = 0; b < m.n; ++b)
      if (upper[static_cast<size_t>(a)][static_cast<size_t>(b)] != upper[static_cast<size_t>(b)][static_cast<size_t>(a)])
        throw DomainError("eta must be symmetric");
  try {
    m.lower = invert(upper);
  } catch (const DomainError&) {
    throw DomainError("eta must be invertible");
  }
  m.upper = std::move(upper);
  return m;
}

bool operator==(const ConstMetric& a, const ConstMetric& b) {
  return a.n == b.n && a.upper == b.upper && a.unit_index == b.unit_index;
}

IntersectionForm::IntersectionForm(DegreeVector d, Ring r, PolyMatrix entries)
    : deg(std::move(d)), ring(r), g(std::move(entries)) {
  if (static_cast<int>(g.size()) != deg.n || ring.nvars != deg.n) throw ShapeError("metric shape does not match n");
  for (const auto& row : g) {
    if (static_cast<int>(row.size()) != deg.n) throw ShapeError("metric must be n×n");
    for (const auto& p : row)
      if (!(p.ring() == ring)) throw RingMismatch("metric entry ring mismatch");
  }
  for (int a = 0; a < deg.n; ++a)
    for (int b = 0; b < a; ++b)
      if (!(at(a, b) == at(b, a))) throw DomainError("metric must be symmetric");
}

IntersectionForm IntersectionForm::shifted(const ConstMetric& eta, const Fraction& lambda) const {
  IntersectionForm r = *this;
  for (int a = 0; a < n(); ++a)
    for (int b = 0; b < n(); ++b)
      r.g[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          at(a, b) + GradedPoly::constant(ring, eta.upper[static_cast<size_t>(a)][static_cast<size_t>(b)] * lambda);
  return r;
}

bool operator==(const IntersectionForm& a, const IntersectionForm& b) {
  return a.deg == b.deg && a.ring == b.ring && a.g == b.g;
}

Fraction metric_degree(const DegreeVector& deg, int a, int b) {
  return deg.d[static_cast<size_t>(a)] + deg.d[static_cast<size_t>(b)] + Fraction(1) - deg.charge;
}

Fraction connection_degree(const DegreeVector& deg, int a, int b, int c) {
  return metric_degree(deg, a, b) - deg.d[static_cast<size_t>(c)];
}

PolyMatrix constant_matrix(const Ring& r, const FracMatrix& m) {
  PolyMatrix out;
  for (const auto& row : m) {
    std::vector<GradedPoly> pr;
    for (const auto& v : row) pr.push_back(GradedPoly::constant(r, v));
    out.push_back(std::move(pr));
  }
  return out;
}

GradedPoly determinant(const PolyMatrix& m) {
  size_t n = m.size();
  const Ring& r = m[0][0].ring();
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  GradedPoly det(r);
  do {
    int inv = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    GradedPoly term = GradedPoly::constant(r, Fraction(inv % 2 ? -1 : 1));
    for (size_t i = 0; i < n && !term.is_zero(); ++i) term = term * m[i][perm[i]];
    det = det + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

namespace {

using Key = std::pair<Exp, int>;  // (monomial, q-order)

struct Unknowns {
  int orders = 1;
  std::vector<std::vector<Exp>> monos;  // per flattened (a, b, c)
  std::vector<int> base;
  int total = 0;
};

void add_to(std::map<Key, SparseRow>& rows, const Key& k, int col, const Fraction& v) {
  if (v.is_zero()) return;
  auto& row = rows[k];
  auto [it, ins] = row.try_emplace(col, Fraction(0));
  it->second += v;
}

}  // namespace

Christoffel christoffel_solve(const IntersectionForm& g, const ConstMetric& eta) {
  const DegreeVector& deg = g.deg;
  const Ring& ring = g.ring;
  int n = deg.n;
  if (eta.n != n) throw ShapeError("eta dimension does not match metric");
  Unknowns u;
  u.orders = ring.kind == CoeffKind::Series ? ring.trunc : 1;
  std::vector<bool> skip(static_cast<size_t>(n), false);
  if (ring.dvar >= 0) skip[static_cast<size_t>(ring.dvar)] = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        u.base.push_back(u.total);
        u.monos.push_back(monomials_of_degree(deg, connection_degree(deg, a, b, c), skip));
        u.total += static_cast<int>(u.monos.back().size()) * u.orders;
      }
  auto flat = [n](int a, int b, int c) { return static_cast<size_t>((a * n + b) * n + c); };
  auto col = [&](size_t f, size_t m, int k) { return u.base[f] + static_cast<int>(m) * u.orders + k; };

  LinearSystem sys(u.total);
  auto flush = [&](std::map<Key, SparseRow>& rows, const GradedPoly* rhs) {
    if (rhs) {
      for (const auto& [e, c] : rhs->terms())
        for (int k = 0; k < u.orders; ++k)
          if (!c.at(k).is_zero()) rows[{e, k}];
    }
    for (auto& [key, row] : rows) {
      Fraction r = rhs ? rhs->coeff(key.first).at(key.second) : Fraction(0);
      sys.add(std::move(row), r);
    }
    rows.clear();
  };

  std::map<Key, SparseRow> rows;
  // metric: Γ^{ab}_c + Γ^{ba}_c = ∂_c g^{ab}
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        GradedPoly rhs = derive(g.at(a, b), c);
        for (size_t f : {flat(a, b, c), flat(b, a, c)})
          for (size_t m = 0; m < u.monos[f].size(); ++m)
            for (int k = 0; k < u.orders; ++k) add_to(rows, {u.monos[f][m], k}, col(f, m, k), Fraction(1));
        flush(rows, &rhs);
      }
  // torsion: g^{as} Γ^{bc}_s − g^{bs} Γ^{ac}_s = 0
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        for (int s = 0; s < n; ++s) {
          for (int side = 0; side < 2; ++side) {
            int x = side ? b : a, y = side ? a : b;
            Fraction sign = side ? Fraction(-1) : Fraction(1);
            size_t f = flat(y, c, s);
            for (const auto& [ge, gc] : g.at(x, s).terms())
              for (size_t m = 0; m < u.monos[f].size(); ++m) {
                Exp e = ge;
                for (size_t i = 0; i < e.size(); ++i) e[i] += u.monos[f][m][i];
                for (int j = 0; j < u.orders; ++j)
                  for (int k = 0; j + k < u.orders; ++k) add_to(rows, {e, j + k}, col(f, m, k), sign * gc.at(j));
              }
          }
        }
        flush(rows, nullptr);
      }

  auto res = sys.solve();
  if (res.status == LinearSystem::Status::Inconsistent)
    throw SolveError("christoffel_solve: inconsistent system (metric is not Levi-Civita admissible)");
  if (res.status == LinearSystem::Status::Underdetermined)
    throw SolveError("christoffel_solve: rank-deficient system, " + std::to_string(res.free_columns.size()) +
                     " free unknowns");
  Christoffel out{deg, Tensor3(n, ring)};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        size_t f = flat(a, b, c);
        GradedPoly p(ring);
        for (size_t m = 0; m < u.monos[f].size(); ++m) {
          CoeffElem coeff;
          if (ring.kind == CoeffKind::Series) {
            std::vector<Fraction> v(static_cast<size_t>(u.orders));
            for (int k = 0; k < u.orders; ++k) v[static_cast<size_t>(k)] = res.x[static_cast<size_t>(col(f, m, k))];
            coeff = CoeffElem::series(std::move(v));
          } else {
            coeff = CoeffElem::rational(res.x[static_cast<size_t>(col(f, m, 0))]);
          }
          p.add_term(u.monos[f][m], coeff);
        }
        out.gamma.at(a, b, c) = std::move(p);
      }
  return out;
}

std::vector<std::optional<GradedPoly>> integrate_vector_potential(const Christoffel& gamma, const ConstMetric& eta) {
  const DegreeVector& deg = gamma.deg;
  int n = deg.n;
  const Ring& ring = gamma.at(0, 0, 0).ring();
  std::vector<std::optional<GradedPoly>> out(static_cast<size_t>(n));
  auto degenerate = deg.degenerate();
  for (int beta = 0; beta < n; ++beta) {
    if (std::find(degenerate.begin(), degenerate.end(), beta) != degenerate.end()) continue;
    const Fraction& db = deg.d[static_cast<size_t>(beta)];
    if (!(db > Fraction(0))) throw DomainError("integrate_vector_potential: d^β must be positive");
    std::vector<GradedPoly> dsig;
    for (int s = 0; s < n; ++s) {
      Fraction den = Fraction(1) + db - deg.d[static_cast<size_t>(s)];
      if (den.is_zero()) throw DomainError("integrate_vector_potential: zero denominator 1 + d^β − d^σ");
      GradedPoly acc(ring);
      for (int e = 0; e < n; ++e) {
        const Fraction& de = deg.d[static_cast<size_t>(e)];
        if (de.is_zero()) continue;
        GradedPoly inner(ring);
        for (int a = 0; a < n; ++a) {
          const Fraction& el = eta.lower[static_cast<size_t>(e)][static_cast<size_t>(a)];
          if (!el.is_zero()) inner = inner + gamma.at(a, beta, s).scaled(el);
        }
        acc = acc + (GradedPoly::variable(ring, e) * inner).scaled(de);
      }
      dsig.push_back(acc.scaled(Fraction(1) / den));
    }
    GradedPoly f(ring);
    for (int s = 0; s < n; ++s) {
      const Fraction& ds = deg.d[static_cast<size_t>(s)];
      if (!ds.is_zero()) f = f + (GradedPoly::variable(ring, s) * dsig[static_cast<size_t>(s)]).scaled(ds);
    }
    f = f.scaled(Fraction(1) / (Fraction(1) + db));
    // Γ^{aβ}_c = η^{aε} ∂_ε ∂_c f^β
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        GradedPoly lhs(ring);
        GradedPoly dc = derive(f, c);
        for (int e = 0; e < n; ++e) {
          const Fraction& eu = eta.upper[static_cast<size_t>(a)][static_cast<size_t>(e)];
          if (!eu.is_zero()) lhs = lhs + derive(dc, e).scaled(eu);
        }
        if (!(lhs == gamma.at(a, beta, c)))
          throw VerificationError("integrate_vector_potential: Γ not integrable at (α, β, γ) = (" +
                                  std::to_string(a + 1) + ", " + std::to_string(beta + 1) + ", " +
                                  std::to_string(c + 1) + ")");
      }
    out[static_cast<size_t>(beta)] = std::move(f);
  }
  return out;
}

}  // namespace frob
