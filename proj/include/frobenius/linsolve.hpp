#pragma once

#include <map>
#include <vector>

#include "frobenius/fraction.hpp"

namespace frob {

using SparseRow = std::map<int, Fraction>;

// Exact sparse Gaussian elimination.  Rows are reduced as they arrive, so only
// an echelon basis is stored.
class LinearSystem {
 public:
  explicit LinearSystem(int ncols) : ncols_(ncols) {}

  void add(SparseRow row, Fraction rhs);
  int cols() const { return ncols_; }
  int rank() const { return static_cast<int>(pivots_.size()); }
  bool consistent() const { return consistent_; }
  std::vector<int> free_columns() const;

  enum class Status { Unique, Inconsistent, Underdetermined };
  struct Result {
    Status status = Status::Unique;
    std::vector<Fraction> x;        // filled when Unique
    std::vector<int> free_columns;  // filled when Underdetermined
  };
  Result solve() const;

  // Basis of the solution space of the homogeneous system (rhs ignored).
  std::vector<std::vector<Fraction>> nullspace() const;

 private:
  struct Pivot {
    SparseRow row;  // leading entry 1 at the pivot column
    Fraction rhs;
  };
  std::vector<Fraction> back_substitute(const std::map<int, Fraction>& free_values, bool homogeneous) const;

  int ncols_;
  std::map<int, Pivot> pivots_;
  bool consistent_ = true;
};

// Dense helpers over Q.
using FracMatrix = std::vector<std::vector<Fraction>>;
FracMatrix identity_matrix(int n);
FracMatrix invert(const FracMatrix& m);  // throws DomainError if singular
Fraction determinant(const FracMatrix& m);

}  // namespace frob
