// Acceptance suite: one pass/fail line per criterion; exit 0 only when every
// criterion holds.
#include <cstdlib>
#include <iostream>
#include <string>

#include "soscert/repro.hpp"

int main(int argc, char** argv) {
  unsigned jobs = 1;
  unsigned only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--jobs" && i + 1 < argc) jobs = static_cast<unsigned>(std::atoi(argv[++i]));
    if (arg == "--only" && i + 1 < argc) only = static_cast<unsigned>(std::atoi(argv[++i]));
  }
  soscert::Report report = soscert::run_acceptance(jobs, only);
  std::cout << report.render();
  std::cout << (report.all_passed() ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL") << "\n";
  return report.all_passed() ? 0 : 1;
}
