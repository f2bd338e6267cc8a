#pragma once

#include "soscert/report.hpp"

namespace soscert {

// The reproduction harness: one entry per acceptance criterion, each printing
// a pass/fail line. `only` = 0 runs everything, otherwise a single criterion.
Report run_acceptance(unsigned jobs = 1, unsigned only = 0);

// Appendix reproduction: the explicit square list equals the k=3 two-point
// target with block weights 11/24 and 1/24, exactly.
Report puzzle_check();

}  // namespace soscert
