#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frobenius/fraction.hpp"

namespace frob {

enum class CoeffKind { Rational, Series };

// Element of Q, or of Q[q]/q^N with the derivation D_B = q d/dq.
// A rational element acts as a constant series when mixed with series.
class CoeffElem {
 public:
  CoeffElem() : c_{Fraction(0)} {}
  static CoeffElem rational(const Fraction& v);
  static CoeffElem series(std::vector<Fraction> coeffs);  // N = coeffs.size()
  static CoeffElem series_constant(const Fraction& v, int n);
  static CoeffElem q_power(int k, int n);

  CoeffKind kind() const { return kind_; }
  int truncation() const { return kind_ == CoeffKind::Series ? static_cast<int>(c_.size()) : 0; }
  const std::vector<Fraction>& coeffs() const { return c_; }
  Fraction at(int k) const;  // q^k coefficient, 0 beyond the stored range
  Fraction constant_term() const { return c_[0]; }

  bool is_zero() const;
  bool is_unit() const { return !c_[0].is_zero(); }
  bool is_constant() const;  // no positive powers of q

  CoeffElem operator-() const;
  CoeffElem operator+(const CoeffElem& o) const;
  CoeffElem operator-(const CoeffElem& o) const;
  CoeffElem operator*(const CoeffElem& o) const;
  CoeffElem scaled(const Fraction& s) const;
  CoeffElem inverse() const;
  CoeffElem derivation() const;  // D_B
  CoeffElem truncated(int n) const;
  // Same value, expressed in the kind/truncation of `like`.
  CoeffElem lifted_to(CoeffKind kind, int n) const;

  Fraction evaluate(const std::optional<Fraction>& q) const;
  std::string str() const;

  friend bool operator==(const CoeffElem& a, const CoeffElem& b);

 private:
  CoeffKind kind_ = CoeffKind::Rational;
  std::vector<Fraction> c_;
};

}  // namespace frob
