#include "frobenius/coeff.hpp"

#include <sstream>

#include "frobenius/errors.hpp"

namespace frob {

namespace {

int common_truncation(const CoeffElem& a, const CoeffElem& b) {
  if (a.kind() == CoeffKind::Series && b.kind() == CoeffKind::Series &&
      a.truncation() != b.truncation()) {
    throw RingMismatch("series truncation mismatch: " + std::to_string(a.truncation()) + " vs " +
                       std::to_string(b.truncation()));
  }
  return std::max(a.truncation(), b.truncation());
}

}  // namespace

CoeffElem CoeffElem::rational(const Fraction& v) {
  CoeffElem e;
  e.c_ = {v};
  return e;
}

CoeffElem CoeffElem::series(std::vector<Fraction> coeffs) {
  if (coeffs.empty()) throw DomainError("series truncation must be positive");
  CoeffElem e;
  e.kind_ = CoeffKind::Series;
  e.c_ = std::move(coeffs);
  return e;
}

CoeffElem CoeffElem::series_constant(const Fraction& v, int n) {
  std::vector<Fraction> c(static_cast<size_t>(n));
  if (n > 0) c[0] = v;
  return series(std::move(c));
}

CoeffElem CoeffElem::q_power(int k, int n) {
  std::vector<Fraction> c(static_cast<size_t>(n));
  if (k < n) c[static_cast<size_t>(k)] = 1;
  return series(std::move(c));
}

Fraction CoeffElem::at(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<size_t>(k)];
}

bool CoeffElem::is_zero() const {
  for (const auto& v : c_)
    if (!v.is_zero()) return false;
  return true;
}

bool CoeffElem::is_constant() const {
  for (size_t k = 1; k < c_.size(); ++k)
    if (!c_[k].is_zero()) return false;
  return true;
}

CoeffElem CoeffElem::lifted_to(CoeffKind kind, int n) const {
  if (kind == CoeffKind::Rational) {
    if (kind_ == CoeffKind::Series && !is_constant())
      throw RingMismatch("cannot view a non-constant series as a rational");
    return rational(c_[0]);
  }
  if (kind_ == CoeffKind::Series) {
    if (truncation() != n) throw RingMismatch("series truncation mismatch");
    return *this;
  }
  return series_constant(c_[0], n);
}

CoeffElem CoeffElem::operator-() const {
  CoeffElem r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

CoeffElem CoeffElem::operator+(const CoeffElem& o) const {
  int n = common_truncation(*this, o);
  if (n == 0) return rational(c_[0] + o.c_[0]);
  std::vector<Fraction> r(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) r[static_cast<size_t>(k)] = at(k) + o.at(k);
  return series(std::move(r));
}

CoeffElem CoeffElem::operator-(const CoeffElem& o) const { return *this + (-o); }

CoeffElem CoeffElem::operator*(const CoeffElem& o) const {
  int n = common_truncation(*this, o);
  if (n == 0) return rational(c_[0] * o.c_[0]);
  if (kind_ == CoeffKind::Rational) return o.scaled(c_[0]);
  if (o.kind_ == CoeffKind::Rational) return scaled(o.c_[0]);
  std::vector<Fraction> r(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (c_[static_cast<size_t>(i)].is_zero()) continue;
    for (int j = 0; i + j < n; ++j) {
      if (o.c_[static_cast<size_t>(j)].is_zero()) continue;
      r[static_cast<size_t>(i + j)] += c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(j)];
    }
  }
  return series(std::move(r));
}

CoeffElem CoeffElem::scaled(const Fraction& s) const {
  CoeffElem r = *this;
  for (auto& v : r.c_) v *= s;
  return r;
}

CoeffElem CoeffElem::inverse() const {
  if (!is_unit()) throw DomainError("coefficient is not a unit: " + str());
  if (kind_ == CoeffKind::Rational) return rational(Fraction(1) / c_[0]);
  int n = truncation();
  std::vector<Fraction> r(static_cast<size_t>(n));
  Fraction inv0 = Fraction(1) / c_[0];
  r[0] = inv0;
  for (int k = 1; k < n; ++k) {
    Fraction acc;
    for (int j = 1; j <= k; ++j) acc += c_[static_cast<size_t>(j)] * r[static_cast<size_t>(k - j)];
    r[static_cast<size_t>(k)] = -acc * inv0;
  }
  return series(std::move(r));
}

CoeffElem CoeffElem::derivation() const {
  CoeffElem r = *this;
  for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] *= Fraction(static_cast<long>(k));
  return r;
}

CoeffElem CoeffElem::truncated(int n) const {
  if (kind_ == CoeffKind::Rational) return *this;
  if (n > truncation()) throw DomainError("cannot extend a truncated series");
  return series(std::vector<Fraction>(c_.begin(), c_.begin() + n));
}

Fraction CoeffElem::evaluate(const std::optional<Fraction>& q) const {
  if (kind_ == CoeffKind::Rational) return c_[0];
  if (!q) throw DomainError("q value required to evaluate a series coefficient");
  Fraction acc;
  for (size_t k = c_.size(); k-- > 0;) acc = acc * *q + c_[k];
  return acc;
}

std::string CoeffElem::str() const {
  if (kind_ == CoeffKind::Rational) return c_[0].str();
  std::ostringstream os;
  os << "[";
  for (size_t k = 0; k < c_.size(); ++k) os << (k ? ", " : "") << c_[k].str();
  os << "]";
  return os.str();
}

bool operator==(const CoeffElem& a, const CoeffElem& b) {
  if (a.kind_ != b.kind_ || a.c_.size() != b.c_.size()) return false;
  return a.c_ == b.c_;
}

}  // namespace frob
