#pragma once

#include <iosfwd>

namespace sphere {

/// Entry point of the command-line front end. Exit codes: 0 success, 1
/// analysis failure (or a failing check), 2 bad arguments or invalid specs. Errors are
/// reported on `err` as a JSON object {"error": kind, "message": text}.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sphere
