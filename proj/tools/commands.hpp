#pragma once

#include <ostream>

namespace subdyn::cli {

//! Parses argv, runs one subcommand and writes its output to `out`.
//! Returns 0 on success, 2 on input errors, 3 when a bound was too small,
//! 1 for any other failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace subdyn::cli
