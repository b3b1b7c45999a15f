#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frobenius/poly.hpp"

namespace frob {

enum class Status { Pass, Fail, Skipped };
std::string status_name(Status s);

struct Witness {
  std::vector<int> index;  // 1-based component indices
  std::optional<GradedPoly> residual;
  std::string note;
};

struct CheckResult {
  std::string name;
  Status status = Status::Pass;
  std::string detail;
  size_t failures = 0;
  std::vector<Witness> witnesses;  // first few failures only

  static constexpr size_t kMaxWitnesses = 4;

  explicit CheckResult(std::string n) : name(std::move(n)) {}
  void fail(Witness w);
  void skip(std::string why) {
    status = Status::Skipped;
    detail = std::move(why);
  }
  bool failed() const { return status == Status::Fail; }
};

// Overall pass iff no check failed (skipped checks are not applicable ones).
bool all_passed(const std::vector<CheckResult>& checks);

inline std::vector<int> one_based(std::initializer_list<int> idx) {
  std::vector<int> v;
  for (int i : idx) v.push_back(i + 1);
  return v;
}

}  // namespace frob
