#ifndef CYCLEFRAC_CLI_HPP
#define CYCLEFRAC_CLI_HPP

#include <ostream>

namespace cyclefrac {

/// Entry point of the `cyclefrac` tool. Returns the process exit status:
/// 0 success, 1 verification failure, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cyclefrac

#endif  // CYCLEFRAC_CLI_HPP
