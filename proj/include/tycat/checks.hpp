#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tycat {

inline constexpr std::uint64_t kDefaultSuiteSeed = 20260814;
inline constexpr int kCheckCount = 8;

struct CheckPart {
  std::string detail;
  bool pass = false;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double ms = 0.0;
  std::vector<CheckPart> parts;
};

// runs one numbered check from the built-in verification suite (1-based)
CheckResult run_check(int id, std::uint64_t seed = kDefaultSuiteSeed);
std::vector<CheckResult> run_all_checks(std::uint64_t seed = kDefaultSuiteSeed);

}  // namespace tycat
