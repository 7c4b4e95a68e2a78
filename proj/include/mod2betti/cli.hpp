#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mod2betti {

/// Exit codes: 0 success, 1 usage or validation error, 2 verified
/// inconsistency.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckResult {
  enum class Status { pass, fail, info };
  std::string name;
  Status status = Status::pass;
  std::string detail;
};

/// Invariant suite plus golden comparisons used by `verify`.
std::vector<CheckResult> verify_suite(int max_genus);

}  // namespace mod2betti
