#pragma once

#include <iosfwd>

namespace orbivol::cli {

// Command-line entry point: parses argv, writes the selected record to `out`
// (and byte-identically to --output PATH when given), diagnostics to `err`.
// Exit codes: 0 success, 1 verification violations, 2 usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orbivol::cli
