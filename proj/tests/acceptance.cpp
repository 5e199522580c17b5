// Full-scale acceptance battery: one PASS/FAIL line per criterion.
#include <iostream>

#include "hodge/suite.hpp"

int main() {
  hodge::suite::SuiteOptions opts;
  opts.level = hodge::suite::Level::full;
  const auto results = hodge::suite::run_acceptance(opts, &std::cout);
  int failed = 0;
  for (const auto& r : results)
    if (!r.passed) ++failed;
  std::cout << hodge::suite::format_table(results);
  return failed == 0 ? 0 : 1;
}
