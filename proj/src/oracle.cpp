#include <random>

#include "frobenius/errors.hpp"
#include "frobenius/pencil.hpp"

namespace frob {

namespace {

using CVec = std::vector<CoeffElem>;

CoeffMatrix zeros(int n, const CoeffElem& z) {
  return CoeffMatrix(static_cast<size_t>(n), CVec(static_cast<size_t>(n), z));
}

CoeffMatrix eval_matrix(const PolyMatrix& m, const std::vector<Fraction>& pt) {
  CoeffMatrix out;
  for (const auto& row : m) {
    CVec r;
    for (const auto& p : row) r.push_back(evaluate_coeff(p, pt));
    out.push_back(std::move(r));
  }
  return out;
}

CoeffMatrix mul(const CoeffMatrix& a, const CoeffMatrix& b) {
  size_t n = a.size();
  CoeffMatrix r = zeros(static_cast<int>(n), a[0][0] - a[0][0]);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < n; ++j) r[i][j] = r[i][j] + a[i][k] * b[k][j];
    }
  return r;
}

CoeffMatrix add(const CoeffMatrix& a, const CoeffMatrix& b) {
  CoeffMatrix r = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

CoeffMatrix neg(const CoeffMatrix& a) {
  CoeffMatrix r = a;
  for (auto& row : r)
    for (auto& v : row) v = -v;
  return r;
}

PolyMatrix derive_matrix(const PolyMatrix& m, int c) {
  PolyMatrix out = m;
  for (auto& row : out)
    for (auto& p : row) p = derive(p, c);
  return out;
}

}  // namespace

CoeffMatrix invert(const CoeffMatrix& m) {
  size_t n = m.size();
  CoeffElem zero = m[0][0] - m[0][0];
  CoeffElem one = zero + CoeffElem::rational(Fraction(1));
  CoeffMatrix a = m, inv = zeros(static_cast<int>(n), zero);
  for (size_t i = 0; i < n; ++i) inv[i][i] = one;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && !a[p][c].is_unit()) ++p;
    if (p == n) throw DomainError("matrix is singular at the point");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    CoeffElem ip = a[c][c].inverse();
    for (size_t j = 0; j < n; ++j) {
      a[c][j] = a[c][j] * ip;
      inv[c][j] = inv[c][j] * ip;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      CoeffElem f = a[r][c];
      for (size_t j = 0; j < n; ++j) {
        a[r][j] = a[r][j] - f * a[c][j];
        inv[r][j] = inv[r][j] - f * inv[c][j];
      }
    }
  }
  return inv;
}

struct PointOracle::Local {
  int n = 0;
  CoeffMatrix g, h;                           // contravariant, covariant
  std::vector<CoeffMatrix> dg, dh;            // [c]
  std::vector<std::vector<CoeffMatrix>> ddh;  // [c][d] = ∂_d ∂_c h
  std::vector<CoeffElem> chr2;                // Γ^b_{sc}, index (b·n + s)·n + c
  std::vector<CoeffElem> dchr2;               // ∂_d Γ^b_{sc}, index ((b·n + s)·n + c)·n + d
};

PointOracle::PointOracle(const IntersectionForm& g) : g_(g) {
  int n = g.n();
  for (int c = 0; c < n; ++c) dg_.push_back(derive_matrix(g.g, c));
  for (int c = 0; c < n; ++c) {
    std::vector<PolyMatrix> row;
    for (int d = 0; d < n; ++d) row.push_back(derive_matrix(dg_[static_cast<size_t>(c)], d));
    ddg_.push_back(std::move(row));
  }
}

PointOracle::Local PointOracle::local(const std::vector<Fraction>& pt, bool second) const {
  Local L;
  int n = L.n = g_.n();
  auto N = static_cast<size_t>(n);
  L.g = eval_matrix(g_.g, pt);
  L.h = invert(L.g);
  for (int c = 0; c < n; ++c) {
    CoeffMatrix dgc = eval_matrix(dg_[static_cast<size_t>(c)], pt);
    L.dg.push_back(dgc);
    L.dh.push_back(neg(mul(mul(L.h, dgc), L.h)));  // ∂_c h = −h (∂_c g) h
  }
  CoeffElem zero = L.g[0][0] - L.g[0][0];
  // A_{m s c} = ∂_s h_{mc} + ∂_c h_{ms} − ∂_m h_{sc}
  auto A = [&](size_t m, size_t s, size_t c) { return L.dh[s][m][c] + L.dh[c][m][s] - L.dh[m][s][c]; };
  L.chr2.assign(N * N * N, zero);
  for (size_t b = 0; b < N; ++b)
    for (size_t s = 0; s < N; ++s)
      for (size_t c = 0; c < N; ++c) {
        CoeffElem acc = zero;
        for (size_t m = 0; m < N; ++m)
          if (!L.g[b][m].is_zero()) acc = acc + L.g[b][m] * A(m, s, c);
        L.chr2[(b * N + s) * N + c] = acc.scaled(Fraction(1, 2));
      }
  if (!second) return L;
  L.ddh.assign(N, std::vector<CoeffMatrix>(N));
  // ∂_d ∂_c h = −(∂_d h ∂_c g h + h ∂_d∂_c g h + h ∂_c g ∂_d h); symmetric in (c, d)
  std::vector<CoeffMatrix> hdg;
  for (size_t c = 0; c < N; ++c) hdg.push_back(mul(L.h, L.dg[c]));
  for (size_t c = 0; c < N; ++c)
    for (size_t d = c; d < N; ++d) {
      CoeffMatrix ddgcd = eval_matrix(ddg_[c][d], pt);
      CoeffMatrix t = add(add(mul(L.dh[d], mul(L.dg[c], L.h)), mul(mul(L.h, ddgcd), L.h)), mul(hdg[c], L.dh[d]));
      L.ddh[c][d] = neg(t);
      if (d != c) L.ddh[d][c] = L.ddh[c][d];
    }
  auto dA = [&](size_t m, size_t s, size_t c, size_t d) {
    return L.ddh[s][d][m][c] + L.ddh[c][d][m][s] - L.ddh[m][d][s][c];
  };
  L.dchr2.assign(N * N * N * N, zero);
  for (size_t b = 0; b < N; ++b)
    for (size_t s = 0; s < N; ++s)
      for (size_t c = s; c < N; ++c)
        for (size_t d = 0; d < N; ++d) {
          CoeffElem acc = zero;
          for (size_t m = 0; m < N; ++m) {
            if (!L.dg[d][b][m].is_zero()) acc = acc + L.dg[d][b][m] * A(m, s, c);
            if (!L.g[b][m].is_zero()) acc = acc + L.g[b][m] * dA(m, s, c, d);
          }
          acc = acc.scaled(Fraction(1, 2));
          L.dchr2[((b * N + c) * N + s) * N + d] = acc;
          L.dchr2[((b * N + s) * N + c) * N + d] = std::move(acc);
        }
  return L;
}

std::vector<CoeffElem> PointOracle::christoffel(const std::vector<Fraction>& pt) const {
  Local L = local(pt, false);
  auto N = static_cast<size_t>(L.n);
  CoeffElem zero = L.g[0][0] - L.g[0][0];
  std::vector<CoeffElem> out(N * N * N, zero);
  // Γ^{ab}_c = −g^{as} Γ^b_{sc}
  for (size_t a = 0; a < N; ++a)
    for (size_t b = 0; b < N; ++b)
      for (size_t c = 0; c < N; ++c) {
        CoeffElem acc = zero;
        for (size_t s = 0; s < N; ++s) acc = acc - L.g[a][s] * L.chr2[(b * N + s) * N + c];
        out[(a * N + b) * N + c] = acc;
      }
  return out;
}

std::vector<CoeffElem> PointOracle::riemann(const std::vector<Fraction>& pt) const {
  Local L = local(pt, true);
  auto N = static_cast<size_t>(L.n);
  CoeffElem zero = L.g[0][0] - L.g[0][0];
  auto G = [&](size_t r, size_t s, size_t c) -> const CoeffElem& { return L.chr2[(r * N + s) * N + c]; };
  auto dG = [&](size_t r, size_t s, size_t c, size_t d) -> const CoeffElem& {
    return L.dchr2[((r * N + s) * N + c) * N + d];
  };
  std::vector<CoeffElem> out(N * N * N * N, zero);
  // R^r_{s m v} = ∂_m Γ^r_{vs} − ∂_v Γ^r_{ms} + Γ^r_{ml} Γ^l_{vs} − Γ^r_{vl} Γ^l_{ms}
  for (size_t r = 0; r < N; ++r)
    for (size_t s = 0; s < N; ++s)
      for (size_t m = 0; m < N; ++m)
        for (size_t v = m + 1; v < N; ++v) {
          CoeffElem acc = dG(r, v, s, m) - dG(r, m, s, v);
          for (size_t l = 0; l < N; ++l) acc = acc + G(r, m, l) * G(l, v, s) - G(r, v, l) * G(l, m, s);
          out[((r * N + s) * N + v) * N + m] = -acc;
          out[((r * N + s) * N + m) * N + v] = std::move(acc);
        }
  return out;
}

std::vector<CoeffElem> christoffel_point_oracle(const IntersectionForm& g, const std::vector<Fraction>& pt) {
  return PointOracle(g).christoffel(pt);
}

bool invertible_at(const IntersectionForm& g, const std::vector<Fraction>& pt) {
  FracMatrix m;
  for (const auto& row : g.g) {
    std::vector<Fraction> r;
    for (const auto& p : row) r.push_back(evaluate_coeff(p, pt).constant_term());
    m.push_back(std::move(r));
  }
  return !determinant(m).is_zero();
}

std::vector<std::vector<Fraction>> sample_points(const IntersectionForm& g, const ConstMetric& eta,
                                                 const std::vector<Fraction>& lambdas, int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<IntersectionForm> pencil;
  for (const auto& l : lambdas) pencil.push_back(g.shifted(eta, l));
  if (pencil.empty()) pencil.push_back(g);
  std::vector<std::vector<Fraction>> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 1000 * (count + 1)) throw DomainError("sample_points: could not find invertible points");
    std::vector<Fraction> pt;
    for (int i = 0; i < g.n(); ++i) {
      long num = static_cast<long>(rng() % 195) - 97;
      long den = static_cast<long>(rng() % 97) + 1;
      pt.emplace_back(num, den);
    }
    bool ok = true;
    for (const auto& p : pencil)
      if (!invertible_at(p, pt)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace frob
