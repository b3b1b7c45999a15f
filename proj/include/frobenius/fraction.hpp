#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>

namespace frob {

// Exact rational, always in lowest terms with positive denominator.
class Fraction {
 public:
  Fraction() = default;
  Fraction(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Fraction(long num, long den);
  explicit Fraction(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Accepts "p" or "p/q" with an optional leading '-'.
  static Fraction parse(const std::string& text);

  std::string str() const;
  std::string numerator_str() const { return v_.get_num().get_str(); }
  std::string denominator_str() const { return v_.get_den().get_str(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  const mpq_class& raw() const { return v_; }

  Fraction operator-() const { return Fraction(mpq_class(-v_)); }
  Fraction& operator+=(const Fraction& o) { v_ += o.v_; return *this; }
  Fraction& operator-=(const Fraction& o) { v_ -= o.v_; return *this; }
  Fraction& operator*=(const Fraction& o) { v_ *= o.v_; return *this; }
  Fraction& operator/=(const Fraction& o);

  friend Fraction operator+(Fraction a, const Fraction& b) { return a += b; }
  friend Fraction operator-(Fraction a, const Fraction& b) { return a -= b; }
  friend Fraction operator*(Fraction a, const Fraction& b) { return a *= b; }
  friend Fraction operator/(Fraction a, const Fraction& b) { return a /= b; }
  friend bool operator==(const Fraction& a, const Fraction& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.str(); }

 private:
  mpq_class v_{0};
};

// Exact square root when the argument is the square of a rational.
bool rational_sqrt(const Fraction& x, Fraction& root);

}  // namespace frob
