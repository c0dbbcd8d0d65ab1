#pragma once

#include <iosfwd>

namespace relnav {

// Cross-checks the closed forms against the numerical references: discrete
// step vs matrix exponential, analytic Jacobians vs central differences,
// preintegration vs step-by-step propagation, and the continuous-flow
// residual.  Prints one line per suite; returns true when all pass.
bool run_selftest(std::ostream& out);

}  // namespace relnav
