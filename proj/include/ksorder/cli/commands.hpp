#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ksorder::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationError = 1,
  kCapacityError = 2,
  kVerificationFailure = 3,
};

/// Scene-dependent verbs refuse n above this unless --cap raises it.
inline constexpr unsigned kDefaultSceneCap = 24;

/// Runs the command line `args` (args[0] is the program name). Data goes to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  unsigned n_min = 3;
  unsigned n_max = 10;
  unsigned k_min = 1;
  unsigned k_max = 4;
  std::uint64_t seed = 1;
  /// Extra sequence file to check for completeness and scoring agreement.
  std::optional<std::string> sequence_path;
};

struct CheckOutcome {
  std::string name;
  std::uint64_t cases = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Runs the invariant suite over every (n, k) in range with k <= n.
std::vector<CheckOutcome> run_verification(const VerifyOptions& options);

}  // namespace ksorder::cli
