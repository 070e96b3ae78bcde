#pragma once

#include <ostream>

namespace qpseed::cli {

/// Exit codes: 0 success, 1 domain error (JSON on `err`), 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qpseed::cli
