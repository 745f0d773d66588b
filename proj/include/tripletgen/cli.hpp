#pragma once

#include <iosfwd>

namespace tripletgen {

/// Exit codes: 0 success, 1 usage or config error, 2 numerical error, 3 I/O error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tripletgen
