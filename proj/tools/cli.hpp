#pragma once

#include <iosfwd>

namespace klq::cli {

/// Exit codes: 0 success or pass, 1 a check failed, 2 usage/input/cache
/// error, 3 resource guard, 4 internal error. Errors print one line
/// "klq: error: <category>: <message>" to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace klq::cli
