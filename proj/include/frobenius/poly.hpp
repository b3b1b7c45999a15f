#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frobenius/coeff.hpp"
#include "frobenius/degree.hpp"

namespace frob {

// Ring configuration of a GradedPoly.  When dvar >= 0 the partial derivative
// in that variable also applies D_B to the coefficients (elliptic t^n).
struct Ring {
  int nvars = 0;
  CoeffKind kind = CoeffKind::Rational;
  int trunc = 0;
  int dvar = -1;

  static Ring rational(int nvars) { return Ring{nvars, CoeffKind::Rational, 0, -1}; }
  static Ring series(int nvars, int trunc, int dvar) { return Ring{nvars, CoeffKind::Series, trunc, dvar}; }

  CoeffElem lift(const Fraction& v) const;
  CoeffElem lift(const CoeffElem& c) const { return c.lifted_to(kind, trunc); }
  Ring truncated(int n) const;

  friend bool operator==(const Ring&, const Ring&) = default;
};

class GradedPoly {
 public:
  using Terms = std::map<Exp, CoeffElem>;

  GradedPoly() = default;
  explicit GradedPoly(Ring r) : ring_(r) {}

  static GradedPoly constant(const Ring& r, const Fraction& v);
  static GradedPoly constant(const Ring& r, const CoeffElem& v);
  static GradedPoly variable(const Ring& r, int i);
  static GradedPoly monomial(const Ring& r, Exp e, const CoeffElem& c);
  static GradedPoly monomial(const Ring& r, Exp e, const Fraction& c) { return monomial(r, std::move(e), r.lift(c)); }

  const Ring& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  CoeffElem coeff(const Exp& e) const;
  bool is_constant() const;

  // Adds c·x^e in place, dropping the term if it cancels.
  void add_term(const Exp& e, const CoeffElem& c);

  GradedPoly operator-() const;
  GradedPoly scaled(const Fraction& s) const;
  GradedPoly scaled(const CoeffElem& s) const;

  std::string str() const;

  friend bool operator==(const GradedPoly& a, const GradedPoly& b) {
    return a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

 private:
  Ring ring_;
  Terms terms_;
};

enum class Op { Add, Sub, Mul };

GradedPoly combine(const GradedPoly& a, const GradedPoly& b, Op op);
inline GradedPoly operator+(const GradedPoly& a, const GradedPoly& b) { return combine(a, b, Op::Add); }
inline GradedPoly operator-(const GradedPoly& a, const GradedPoly& b) { return combine(a, b, Op::Sub); }
inline GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) { return combine(a, b, Op::Mul); }

GradedPoly derive(const GradedPoly& p, int index);
GradedPoly euler(const GradedPoly& p, const DegreeVector& deg);
GradedPoly homogeneous_part(const GradedPoly& p, const Fraction& d, const DegreeVector& deg);
bool is_homogeneous(const GradedPoly& p, const Fraction& d, const DegreeVector& deg);
// Set of weighted degrees occurring in p, ascending.
std::vector<Fraction> degrees_present(const GradedPoly& p, const DegreeVector& deg);

Fraction evaluate(const GradedPoly& p, const std::vector<Fraction>& point,
                  const std::optional<Fraction>& q_value = std::nullopt);
// Evaluates the variables only; series coefficients stay symbolic in q.
CoeffElem evaluate_coeff(const GradedPoly& p, const std::vector<Fraction>& point);

// p(images[0], ..., images[k-1]); all images share `target`.
GradedPoly substitute(const GradedPoly& p, const std::vector<GradedPoly>& images, const Ring& target);
GradedPoly truncate(const GradedPoly& p, int n);
// Same terms, coefficients re-expressed in another ring of equal variable count.
GradedPoly change_ring(const GradedPoly& p, const Ring& target);

// All exponent vectors over variables [0, nvars) with weighted degree exactly d,
// skipping the variables flagged in `skip`.  Lexicographically sorted.
std::vector<Exp> monomials_of_degree(const DegreeVector& deg, const Fraction& d,
                                     const std::vector<bool>& skip = {});

}  // namespace frob
