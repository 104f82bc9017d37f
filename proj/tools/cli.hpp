#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mmlb::cli {

/// Runs the command line; returns the process exit status (0 success,
/// 1 computation error, 2 usage error). Reports go to `out`, diagnostics to
/// `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with `args` excluding the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Where each library operation is exposed: subcommand, the mode selecting
/// it (empty when the subcommand has one mode) and a runnable example
/// argument list (paths relative to the fixtures directory are prefixed with
/// "@").
struct Route {
    std::string operation;
    std::string subcommand;
    std::string mode;
    std::vector<std::string> example;
};

const std::vector<Route>& operation_routes();
const std::vector<std::string>& subcommands();

/// Environment variable holding the default seed (0 when unset).
inline constexpr const char* kSeedEnv = "MMLB_SEED";

}  // namespace mmlb::cli
