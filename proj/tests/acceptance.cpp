// SPDX-License-Identifier: MIT
// Acceptance runner: one summary line per criterion, the individual checks
// indented below it.  With no arguments every criterion runs; otherwise only
// the listed ids.  Exits nonzero when any selected criterion fails.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "checks.hpp"

namespace ck = dirzeta::checks;

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    char* end = nullptr;
    const long id = std::strtol(argv[i], &end, 10);
    if (*end != '\0' || id < 1 || id > ck::kCriteria) {
      std::cerr << "usage: dirzeta_acceptance [criterion 1-" << ck::kCriteria << "]...\n";
      return 2;
    }
    ids.push_back(static_cast<int>(id));
  }
  if (ids.empty()) {
    for (int id = 1; id <= ck::kCriteria; ++id) ids.push_back(id);
  }

  bool all = true;
  for (int id : ids) {
    const ck::Criterion c = ck::criterion(id);
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1fs", c.seconds);
    std::cout << "criterion " << id << ": " << (c.passed() ? "PASS" : "FAIL") << "  " << c.title << "  (" << secs
              << ")\n";
    for (const auto& r : c.checks) std::cout << "    " << ck::format_line(r) << "\n";
    std::cout.flush();
    all = all && c.passed();
  }
  return all ? 0 : 1;
}
