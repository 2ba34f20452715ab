#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace edvw {

/// Entry point of the `edvw` tool. `args[0]` is the program name. Reports
/// and tables go to `out` unless a path is given; diagnostics go to `err`.
/// Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

/// Column order of report CSVs.
inline constexpr const char* kReportHeader =
    "alpha,beta,solver,seed,ncc,error,lambda,iters,wall_ms";

}  // namespace edvw
