#include "frobenius/poly.hpp"

#include <functional>
#include <set>
#include <sstream>

#include "frobenius/errors.hpp"

namespace frob {

CoeffElem Ring::lift(const Fraction& v) const {
  if (kind == CoeffKind::Rational) return CoeffElem::rational(v);
  return CoeffElem::series_constant(v, trunc);
}

Ring Ring::truncated(int n) const {
  Ring r = *this;
  if (kind == CoeffKind::Series) {
    if (n > trunc) throw DomainError("cannot raise truncation from " + std::to_string(trunc));
    r.trunc = n;
  }
  return r;
}

GradedPoly GradedPoly::constant(const Ring& r, const Fraction& v) { return constant(r, r.lift(v)); }

GradedPoly GradedPoly::constant(const Ring& r, const CoeffElem& v) {
  return monomial(r, Exp(static_cast<size_t>(r.nvars), 0), v);
}

GradedPoly GradedPoly::variable(const Ring& r, int i) {
  if (i < 0 || i >= r.nvars) throw IndexError("variable index out of range");
  Exp e(static_cast<size_t>(r.nvars), 0);
  e[static_cast<size_t>(i)] = 1;
  return monomial(r, e, r.lift(Fraction(1)));
}

GradedPoly GradedPoly::monomial(const Ring& r, Exp e, const CoeffElem& c) {
  if (static_cast<int>(e.size()) != r.nvars) throw ShapeError("exponent length does not match ring");
  for (int v : e)
    if (v < 0) throw ShapeError("negative exponent");
  GradedPoly p(r);
  p.add_term(e, r.lift(c));
  return p;
}

CoeffElem GradedPoly::coeff(const Exp& e) const {
  auto it = terms_.find(e);
  if (it == terms_.end()) return ring_.lift(Fraction(0));
  return it->second;
}

bool GradedPoly::is_constant() const {
  for (const auto& [e, c] : terms_)
    for (int v : e)
      if (v) return false;
  return true;
}

void GradedPoly::add_term(const Exp& e, const CoeffElem& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

GradedPoly GradedPoly::operator-() const {
  GradedPoly r(ring_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

GradedPoly GradedPoly::scaled(const Fraction& s) const {
  GradedPoly r(ring_);
  if (s.is_zero()) return r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c.scaled(s));
  return r;
}

GradedPoly GradedPoly::scaled(const CoeffElem& s) const {
  GradedPoly r(ring_);
  CoeffElem k = ring_.lift(s);
  for (const auto& [e, c] : terms_) r.add_term(e, c * k);
  return r;
}

std::string GradedPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      os << "*t" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

GradedPoly combine(const GradedPoly& a, const GradedPoly& b, Op op) {
  if (!(a.ring() == b.ring())) throw RingMismatch("combine: ring configuration mismatch");
  GradedPoly r(a.ring());
  switch (op) {
    case Op::Add:
    case Op::Sub:
      r = a;
      for (const auto& [e, c] : b.terms()) r.add_term(e, op == Op::Add ? c : -c);
      return r;
    case Op::Mul:
      for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
          Exp e = ea;
          for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
          r.add_term(e, ca * cb);
        }
      }
      return r;
  }
  return r;
}

GradedPoly derive(const GradedPoly& p, int index) {
  const Ring& ring = p.ring();
  if (index < 0 || index >= ring.nvars) throw IndexError("derive: index " + std::to_string(index + 1) + " out of range");
  GradedPoly r(ring);
  for (const auto& [e, c] : p.terms()) {
    int k = e[static_cast<size_t>(index)];
    if (k > 0) {
      Exp f = e;
      f[static_cast<size_t>(index)] -= 1;
      r.add_term(f, c.scaled(Fraction(k)));
    }
    if (index == ring.dvar) r.add_term(e, c.derivation());
  }
  return r;
}

GradedPoly euler(const GradedPoly& p, const DegreeVector& deg) {
  if (deg.n != p.ring().nvars) throw RingMismatch("euler: degree vector does not match ring");
  GradedPoly r(p.ring());
  for (const auto& [e, c] : p.terms()) r.add_term(e, c.scaled(deg.of(e)));
  return r;
}

GradedPoly homogeneous_part(const GradedPoly& p, const Fraction& d, const DegreeVector& deg) {
  GradedPoly r(p.ring());
  for (const auto& [e, c] : p.terms())
    if (deg.of(e) == d) r.add_term(e, c);
  return r;
}

bool is_homogeneous(const GradedPoly& p, const Fraction& d, const DegreeVector& deg) {
  for (const auto& [e, c] : p.terms())
    if (deg.of(e) != d) return false;
  return true;
}

std::vector<Fraction> degrees_present(const GradedPoly& p, const DegreeVector& deg) {
  std::set<Fraction> s;
  for (const auto& [e, c] : p.terms()) s.insert(deg.of(e));
  return {s.begin(), s.end()};
}

namespace {

Fraction power(const Fraction& x, int k) {
  Fraction r(1);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

void check_point(const GradedPoly& p, const std::vector<Fraction>& point) {
  if (static_cast<int>(point.size()) != p.ring().nvars) throw ShapeError("point length does not match variable count");
}

}  // namespace

Fraction evaluate(const GradedPoly& p, const std::vector<Fraction>& point, const std::optional<Fraction>& q_value) {
  check_point(p, point);
  if (p.ring().kind == CoeffKind::Series && !q_value) throw DomainError("evaluate: q value required in series mode");
  Fraction acc;
  for (const auto& [e, c] : p.terms()) {
    Fraction m = c.evaluate(q_value);
    for (size_t i = 0; i < e.size(); ++i) m *= power(point[i], e[i]);
    acc += m;
  }
  return acc;
}

CoeffElem evaluate_coeff(const GradedPoly& p, const std::vector<Fraction>& point) {
  check_point(p, point);
  CoeffElem acc = p.ring().lift(Fraction(0));
  for (const auto& [e, c] : p.terms()) {
    Fraction m(1);
    for (size_t i = 0; i < e.size(); ++i) m *= power(point[i], e[i]);
    acc = acc + c.scaled(m);
  }
  return acc;
}

GradedPoly substitute(const GradedPoly& p, const std::vector<GradedPoly>& images, const Ring& target) {
  if (static_cast<int>(images.size()) != p.ring().nvars) throw ShapeError("substitute: wrong number of images");
  for (const auto& g : images)
    if (!(g.ring() == target)) throw RingMismatch("substitute: image ring mismatch");
  // Cache powers of each image.
  std::vector<std::vector<GradedPoly>> pw(images.size());
  GradedPoly one = GradedPoly::constant(target, Fraction(1));
  GradedPoly r(target);
  for (const auto& [e, c] : p.terms()) {
    GradedPoly m = GradedPoly::constant(target, target.lift(c));
    for (size_t i = 0; i < e.size(); ++i) {
      auto& cache = pw[i];
      if (cache.empty()) cache.push_back(one);
      while (static_cast<int>(cache.size()) <= e[i]) cache.push_back(cache.back() * images[i]);
      if (e[i]) m = m * cache[static_cast<size_t>(e[i])];
    }
    r = r + m;
  }
  return r;
}

GradedPoly truncate(const GradedPoly& p, int n) {
  Ring r = p.ring().truncated(n);
  GradedPoly out(r);
  for (const auto& [e, c] : p.terms()) out.add_term(e, c.truncated(n));
  return out;
}

GradedPoly change_ring(const GradedPoly& p, const Ring& target) {
  if (target.nvars != p.ring().nvars) throw RingMismatch("change_ring: variable count differs");
  GradedPoly out(target);
  for (const auto& [e, c] : p.terms()) out.add_term(e, target.lift(c));
  return out;
}

std::vector<Exp> monomials_of_degree(const DegreeVector& deg, const Fraction& d, const std::vector<bool>& skip) {
  std::vector<Exp> out;
  if (d < Fraction(0)) return out;
  int n = deg.n;
  for (int i = 0; i < n; ++i) {
    bool skipped = static_cast<int>(skip.size()) > i && skip[static_cast<size_t>(i)];
    if (!skipped && !(deg.d[static_cast<size_t>(i)] > Fraction(0)))
      throw DomainError("monomial enumeration over a degree-0 variable");
  }
  Exp e(static_cast<size_t>(n), 0);
  std::function<void(int, Fraction)> rec = [&](int i, Fraction left) {
    if (i == n) {
      if (left.is_zero()) out.push_back(e);
      return;
    }
    bool skipped = static_cast<int>(skip.size()) > i && skip[static_cast<size_t>(i)];
    if (skipped) {
      e[static_cast<size_t>(i)] = 0;
      rec(i + 1, left);
      return;
    }
    const Fraction& di = deg.d[static_cast<size_t>(i)];
    int k = 0;
    for (Fraction rest = left; rest >= Fraction(0); rest -= di, ++k) {
      e[static_cast<size_t>(i)] = k;
      rec(i + 1, rest);
    }
    e[static_cast<size_t>(i)] = 0;
  };
  rec(0, d);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace frob
