#pragma once

#include "cfl/flat_bundles.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace cfl {

/// Parses expressions like "0.3", "sin(1)", "0.2 + 0.5*cos(1) - 0.25*sin(2)"
/// into a trigonometric polynomial; the integer inside cos/sin is the
/// harmonic index k, mapped to frequency 2 pi k / l at evaluation time.
TrigPoly parse_trig_poly(const std::string& text);

/// Batch front end. args excludes the program name. Returns the process
/// exit code: 0 all checks passed, 1 a check failed or a run-time
/// obstruction was hit, 2 usage or configuration error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace cfl
