#include "frobenius/report.hpp"

namespace frob {

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "fail";
}

void CheckResult::fail(Witness w) {
  status = Status::Fail;
  ++failures;
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
}

bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (c.failed()) return false;
  return true;
}

}  // namespace frob
