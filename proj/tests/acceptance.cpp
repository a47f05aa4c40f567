// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Usage: acceptance [--seed N] [--inject-fault]

#include <cstdlib>
#include <iostream>
#include <string>

#include "cyclo/acceptance.hpp"

int main(int argc, char** argv) {
  cyclo::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      opts.seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (arg == "--inject-fault") {
      opts.inject_fault = true;
    } else {
      std::cerr << "usage: acceptance [--seed N] [--inject-fault]\n";
      return 2;
    }
  }
  std::cout << "seed " << opts.seed << "\n";
  int failed = 0;
  for (const auto& r : cyclo::run_acceptance(opts)) {
    std::cout << cyclo::format_criterion(r) << "\n";
    failed += !r.pass;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion(s) failed") << "\n";
  return failed == 0 ? 0 : 1;
}
