#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ruelle::cli {

enum ExitCode : int {
  kSuccess = 0,
  kToleranceFailure = 1,
  kConfigError = 2,
};

/// Runs one command line (without the program name).  Reports go to `out`
/// unless --out names a directory; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

/// "start:stop:count" (inclusive, evenly spaced) or "b1,b2,...".
std::vector<double> parse_beta_grid(const std::string& spec);

/// The name of the generator used by every randomized battery.
inline constexpr const char* kGeneratorName = "mt19937_64";

}  // namespace ruelle::cli
