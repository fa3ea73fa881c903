#pragma once

#include <ostream>

namespace dotgroup {

/// Command-line entry point. Returns 0 on success, 2 on a usage error and 1 on
/// a data error (with a one-line message on `err`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace dotgroup
