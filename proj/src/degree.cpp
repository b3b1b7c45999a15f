#include "frobenius/degree.hpp"

#include "frobenius/errors.hpp"

namespace frob {

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::Elliptic: return "elliptic";
    case Mode::Coxeter: return "coxeter";
    case Mode::Generic: return "generic";
  }
  return "generic";
}

Mode parse_mode(const std::string& s) {
  if (s == "elliptic") return Mode::Elliptic;
  if (s == "coxeter") return Mode::Coxeter;
  if (s == "generic") return Mode::Generic;
  throw ParseError("unknown mode \"" + s + "\"");
}

DegreeVector DegreeVector::make(Mode mode, std::vector<Fraction> degrees, Fraction charge) {
  DegreeVector v;
  v.n = static_cast<int>(degrees.size());
  v.d = std::move(degrees);
  v.charge = charge;
  v.mode = mode;
  v.validate();
  return v;
}

void DegreeVector::validate() const {
  if (n < 1 || static_cast<int>(d.size()) != n) throw DomainError("degree vector length must equal n >= 1");
  if (d[0] != Fraction(1)) throw DomainError("d^1 must be 1");
  if (mode == Mode::Elliptic) {
    if (n < 2) throw DomainError("elliptic mode needs n >= 2");
    if (!d[static_cast<size_t>(n - 1)].is_zero()) throw DomainError("d^n must be 0");
    if (charge != Fraction(1)) throw DomainError("elliptic charge D must be 1");
    if (n > 2 && !(d[0] > d[1])) throw DomainError("elliptic degrees need d^1 > d^2");
    for (int i = 1; i + 1 < n - 1; ++i)
      if (d[static_cast<size_t>(i)] < d[static_cast<size_t>(i + 1)])
        throw DomainError("elliptic degrees must be non-increasing");
    if (n > 2 && !(d[static_cast<size_t>(n - 2)] > Fraction(0)))
      throw DomainError("elliptic degrees need d^{n-1} > 0");
  } else {
    for (int i = 0; i < n; ++i)
      if (!(d[static_cast<size_t>(i)] > Fraction(0)))
        throw DomainError("d^" + std::to_string(i + 1) + " must be positive outside elliptic mode");
  }
  std::vector<int> deg = degenerate();
  if (mode == Mode::Elliptic) {
    if (deg != std::vector<int>{n - 1}) throw DomainError("elliptic degenerate set must be exactly {n}");
  } else if (!deg.empty()) {
    throw DomainError("degenerate index " + std::to_string(deg[0] + 1) + " outside elliptic mode");
  }
}

Fraction DegreeVector::divisor(int beta) const {
  return d[static_cast<size_t>(beta)] + (Fraction(1) - charge) / Fraction(2);
}

std::vector<int> DegreeVector::degenerate() const {
  std::vector<int> out;
  for (int b = 0; b < n; ++b)
    if (divisor(b).is_zero()) out.push_back(b);
  return out;
}

Fraction DegreeVector::of(const Exp& e) const {
  Fraction s;
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i]) s += d[i] * Fraction(e[i]);
  return s;
}

bool operator==(const DegreeVector& a, const DegreeVector& b) {
  return a.n == b.n && a.d == b.d && a.charge == b.charge && a.mode == b.mode;
}

}  // namespace frob
