#pragma once

#include <string>
#include <vector>

#include "frobenius/fraction.hpp"

namespace frob {

enum class Mode { Elliptic, Coxeter, Generic };

std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);

using Exp = std::vector<int>;

// Weighted degrees d^1..d^n and charge D.  Indices are 0-based in code.
struct DegreeVector {
  int n = 0;
  std::vector<Fraction> d;
  Fraction charge;
  Mode mode = Mode::Generic;

  // Validates and returns; throws DomainError naming the violated condition.
  static DegreeVector make(Mode mode, std::vector<Fraction> degrees, Fraction charge);
  void validate() const;

  // d^β + (1 − D)/2
  Fraction divisor(int beta) const;
  std::vector<int> degenerate() const;
  Fraction of(const Exp& e) const;
};

bool operator==(const DegreeVector& a, const DegreeVector& b);

}  // namespace frob
