#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cobarlab {

/// Exit codes: 0 success or every verdict true, 1 a computed verdict is false,
/// 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace cobarlab
