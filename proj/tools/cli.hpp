#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace catfab::cli {

/// Runs one catfab command (tn, table, pool, cascade) with the given
/// arguments (program name excluded). Writes to `out` when a command's
/// --out is "-" and diagnostics to `err`.
///
/// Exit codes: 0 success, 2 parameter error, 3 I/O error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace catfab::cli
