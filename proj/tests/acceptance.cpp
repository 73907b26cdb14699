// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <cstdlib>
#include <iostream>
#include <set>
#include <string>

#include "utsp/acceptance.hpp"

int main(int argc, char** argv) {
  utsp::acceptance::Config cfg;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc) {
      cfg.seed = std::stoull(argv[++i]);
    } else if (a == "--only" && i + 1 < argc) {
      only.insert(std::stoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--seed N] [--only ID]...\n";
      return 2;
    }
  }
  int failed = 0;
  for (const auto& c : utsp::acceptance::criteria()) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto r = utsp::acceptance::run_criterion(c, cfg);
    std::cout << utsp::acceptance::format_line(r) << std::endl;
    failed += !r.passed;
  }
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : std::string("acceptance: all criteria passed"))
            << std::endl;
  return failed ? 1 : 0;
}
