// SPDX-License-Identifier: MIT
// Command-line front end of the dirzeta tool.
#pragma once

#include <iosfwd>

namespace dirzeta::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Parses and executes one command line.  A failed `oracle` check also exits
/// with kDomainError.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dirzeta::cli
