#pragma once

#include <iosfwd>

namespace rcw {

/// Exit codes: 0 verified, 1 usage or input error, 2 hypotheses violated,
/// 3 degenerate at infinity, 4 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rcw
