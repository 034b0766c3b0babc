#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace meadow::cli {

/// Runs one command line (without the program name), writing the report to
/// `out` and diagnostics to `err`.
///
/// Returns 0 on success, Valid or SampledOk; 1 when a check is Refuted;
/// 2 on usage or domain errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace meadow::cli
