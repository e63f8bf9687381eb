#pragma once

#include <ostream>

namespace minksum::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,       // bad flags or scene schema
  kExitNumeric = 2,     // input failed numeric validation
  kExitIo = 3,
  kExitPlotDimension = 4,
};

/// Entry point behind the minksum executable. Data goes to `out` when no
/// --out file is given, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace minksum::cli
