#pragma once

// Command layer behind the `locdec` executable. Each command takes a plain
// config struct and returns a JSON report plus a verdict flag.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "locdec/io.hpp"

namespace locdec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdict = 1;
inline constexpr int kExitUsage = 2;

struct CommandResult {
  Json report;
  bool verdict = true;
};

struct AmosVerifyConfig {
  std::optional<std::size_t> k;
  std::optional<double> p;
  std::optional<std::string> language;
  std::optional<std::string> decider;
  std::size_t maxN = 8;
  bool cycles = false;
  std::size_t idPermutations = 0;
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 0;
};

struct SeparationConfig {
  std::optional<std::size_t> k;
  std::optional<std::pair<double, double>> rational;
  double p = 0.64;
  double eps = 0.1;
  std::size_t t = 0;
  std::optional<std::string> decider;
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 0;
};

struct SecureScanConfig {
  std::optional<std::string> decider;
  std::optional<std::string> input;          // comma-separated symbols
  std::optional<std::string> instanceFile;   // JSON instance
  std::optional<std::size_t> k;              // build the separation illegal instance
  std::optional<std::pair<double, double>> rational;
  double p = 0.64;
  double eps = 0.1;
  std::optional<double> delta;
  std::optional<std::size_t> lambda;
  std::size_t t = 0;
  std::optional<Subpath> region;
  EvalMode mode = EvalMode::automatic;
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 0;
};

struct TreeCycleConfig {
  double p = 0.9;
  double q = 0.9;
  std::size_t t = 0;
  std::optional<std::size_t> n;
  std::optional<std::string> decider;
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 0;
};

struct DerandomizeConfig {
  std::string language;
  std::string input;
  std::optional<std::size_t> radius;
  std::optional<double> p;  // with q and t: derive the radius
  std::optional<double> q;
  std::size_t t = 0;
  OracleKind oracle = OracleKind::analytic;
  std::optional<std::size_t> cap;
};

CommandResult cmd_amos_verify(const AmosVerifyConfig& cfg);
CommandResult cmd_separation(const SeparationConfig& cfg);
CommandResult cmd_secure_scan(const SecureScanConfig& cfg);
CommandResult cmd_tree_cycle(const TreeCycleConfig& cfg);
CommandResult cmd_derandomize(const DerandomizeConfig& cfg);

/// Replaces flags on the command line by the entries of the JSON object in
/// the file named by --config. Keys are option names without dashes.
std::vector<std::string> apply_config(std::vector<std::string> args);

/// Parses `args` (without the program name), runs the command and writes the
/// report. Returns the process exit code.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace locdec::cli
