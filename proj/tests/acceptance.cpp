// acceptance runner: prints one PASS/FAIL line per criterion plus its
// sub-assertions; exit code 0 only when every requested criterion passes
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <vector>

#include "tycat/checks.hpp"

int main(int argc, char** argv) {
  int only = 0;
  std::uint64_t seed = tycat::kDefaultSuiteSeed;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
      seed = std::strtoull(argv[++i], nullptr, 10);
  }
  std::vector<tycat::CheckResult> results;
  try {
    if (only > 0)
      results.push_back(tycat::run_check(only, seed));
    else
      results = tycat::run_all_checks(seed);
  } catch (const std::exception& e) {
    std::cout << "criterion " << only << ": FAIL - uncaught exception: " << e.what() << "\n";
    return 1;
  }
  bool all = true;
  for (const auto& r : results) {
    std::cout << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << " - " << r.name
              << " (" << static_cast<long long>(r.ms) << " ms)\n";
    for (const auto& p : r.parts)
      std::cout << "  [" << (p.pass ? "ok" : "FAIL") << "] " << p.detail << "\n";
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
