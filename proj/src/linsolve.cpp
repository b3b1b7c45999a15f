#include "frobenius/linsolve.hpp"

#include "frobenius/errors.hpp"

namespace frob {

void LinearSystem::add(SparseRow row, Fraction rhs) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first < 0 || it->first >= ncols_) throw IndexError("linear system column out of range");
    it = it->second.is_zero() ? row.erase(it) : std::next(it);
  }
  while (!row.empty()) {
    auto lead = row.begin();
    int col = lead->first;
    auto pv = pivots_.find(col);
    if (pv == pivots_.end()) {
      Fraction inv = Fraction(1) / lead->second;
      for (auto& [c, v] : row) v *= inv;
      rhs *= inv;
      pivots_.emplace(col, Pivot{std::move(row), rhs});
      return;
    }
    Fraction f = lead->second;
    for (const auto& [c, v] : pv->second.row) {
      auto [slot, inserted] = row.try_emplace(c, Fraction(0));
      slot->second -= f * v;
      if (slot->second.is_zero()) row.erase(slot);
    }
    rhs -= f * pv->second.rhs;
  }
  if (!rhs.is_zero()) consistent_ = false;
}

std::vector<int> LinearSystem::free_columns() const {
  std::vector<int> out;
  for (int c = 0; c < ncols_; ++c)
    if (!pivots_.count(c)) out.push_back(c);
  return out;
}

std::vector<Fraction> LinearSystem::back_substitute(const std::map<int, Fraction>& free_values,
                                                    bool homogeneous) const {
  std::vector<Fraction> x(static_cast<size_t>(ncols_));
  for (const auto& [c, v] : free_values) x[static_cast<size_t>(c)] = v;
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    Fraction acc = homogeneous ? Fraction(0) : it->second.rhs;
    for (const auto& [c, v] : it->second.row)
      if (c != it->first) acc -= v * x[static_cast<size_t>(c)];
    x[static_cast<size_t>(it->first)] = acc;
  }
  return x;
}

LinearSystem::Result LinearSystem::solve() const {
  Result r;
  if (!consistent_) {
    r.status = Status::Inconsistent;
    return r;
  }
  r.free_columns = free_columns();
  if (!r.free_columns.empty()) {
    r.status = Status::Underdetermined;
    return r;
  }
  r.x = back_substitute({}, false);
  return r;
}

std::vector<std::vector<Fraction>> LinearSystem::nullspace() const {
  std::vector<std::vector<Fraction>> basis;
  for (int f : free_columns()) basis.push_back(back_substitute({{f, Fraction(1)}}, true));
  return basis;
}

FracMatrix identity_matrix(int n) {
  FracMatrix m(static_cast<size_t>(n), std::vector<Fraction>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  return m;
}

namespace {

// Gauss-Jordan on [m | I]; returns false if singular.
bool gauss_jordan(FracMatrix a, FracMatrix& inv, Fraction& det) {
  size_t n = a.size();
  inv = identity_matrix(static_cast<int>(n));
  det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) {
      det = 0;
      return false;
    }
    if (p != c) {
      std::swap(a[p], a[c]);
      std::swap(inv[p], inv[c]);
      det = -det;
    }
    Fraction piv = a[c][c];
    det *= piv;
    Fraction ip = Fraction(1) / piv;
    for (size_t j = 0; j < n; ++j) {
      a[c][j] *= ip;
      inv[c][j] *= ip;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      Fraction f = a[r][c];
      for (size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return true;
}

}  // namespace

FracMatrix invert(const FracMatrix& m) {
  FracMatrix inv;
  Fraction det;
  if (!gauss_jordan(m, inv, det)) throw DomainError("matrix is singular");
  return inv;
}

Fraction determinant(const FracMatrix& m) {
  FracMatrix inv;
  Fraction det;
  gauss_jordan(m, inv, det);
  return det;
}

}  // namespace frob
