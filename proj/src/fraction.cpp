#include "frobenius/fraction.hpp"

#include <regex>

#include "frobenius/errors.hpp"

namespace frob {

Fraction::Fraction(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Fraction& Fraction::operator/=(const Fraction& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

Fraction Fraction::parse(const std::string& text) {
  static const std::regex re("^(-?[0-9]+)(/([0-9]+))?$");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw ParseError("not a fraction: \"" + text + "\"");
  mpz_class num(m[1].str(), 10);
  mpz_class den(1);
  if (m[3].matched) den = mpz_class(m[3].str(), 10);
  if (den == 0) throw ParseError("zero denominator in \"" + text + "\"");
  mpq_class q(num, den);
  q.canonicalize();
  return Fraction(q);
}

std::string Fraction::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

bool rational_sqrt(const Fraction& x, Fraction& root) {
  if (x.sign() < 0) return false;
  mpz_class n = x.raw().get_num(), d = x.raw().get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  root = Fraction(mpq_class(rn, rd));
  return true;
}

}  // namespace frob
