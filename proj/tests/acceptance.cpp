// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Optional arguments select criterion ids.
#include <cstdlib>
#include <iostream>
#include <string>

#include "cpn/verify.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  const cpn::VerificationReport report = cpn::run_acceptance(ids);
  int failed = 0;
  for (const auto& c : report.criteria) {
    std::cout << cpn::render(c);
    if (!c.pass()) ++failed;
  }
  std::cout << "\n" << report.criteria.size() - failed << "/" << report.criteria.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
