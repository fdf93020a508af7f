#pragma once

#include <ostream>

namespace permlike {

// Fast functional scoreboard: one PASS/FAIL line per check, returns the
// failure count. Covers each layer shallowly; the test suite goes deep.
int run_selftest(std::ostream& out);

}  // namespace permlike
