#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "meanlab/calculus.hpp"
#include "meanlab/means.hpp"

namespace meanlab::cli {

/// Exit statuses: 0 every check passed, 1 some check failed, 2 usage or
/// input error (diagnostic on `err`).
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitError = 2;

/// Runs one meanlab invocation; args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

/// "start:end:count[:log]"
calculus::GridSpec parse_zgrid(const std::string& spec);

/// "default" or a CSV file with header `x,y`.
std::vector<PositivePair> load_pairs(const std::string& spec);

/// MEANLAB_TOL, if set; throws std::invalid_argument when malformed.
std::optional<double> tolerance_from_env();

}  // namespace meanlab::cli
