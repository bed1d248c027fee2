#pragma once

// Secure subpaths: windows on which every node says yes with probability at
// least 1 - delta, the length bound that guarantees one exists inside any long
// enough subpath of a legal instance, and a scanner that looks for them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locdec/core.hpp"
#include "locdec/deciders.hpp"
#include "locdec/engine.hpp"

namespace locdec {

struct SecureParams {
  double delta = 0.1;
  std::size_t lambda = 1;  // minimum window length
  std::size_t t = 0;       // rounds of the decider under test
  double p = 0.5;          // its yes-success probability

  /// lambda = 2t+1, the usual choice.
  static SecureParams standard(double delta, std::size_t t, double p);
  /// Throws std::invalid_argument unless delta in (0,1), lambda >= 1, p in (0,1].
  void validate() const;
};

/// ceil(log p / log(1 - delta)), with ratios within 1e-12 of an integer taken
/// as that integer so the result does not depend on the logarithm base.
std::size_t ceil_log_ratio(double p, double delta);

struct SecurityLength {
  std::size_t nodes = 0;
  bool degenerate = false;  // p == 1: every window is trivially secure
  std::string warning;
};

/// 4 (lambda + 2t) ceil(log p / log(1 - delta)).
SecurityLength security_length(const SecureParams& params);

/// ceil((lambda - 1) / 2): radius of candidate windows.
std::size_t window_radius(std::size_t lambda);

/// Counting behind the existence argument for a subpath of the given length:
/// candidate centres |R| = len - 2(r + t + 1), Q = 2(t + r) + 1 independent
/// classes, and the bound Q log p / log(1 - delta) on insecure centres.
struct CoveringArithmetic {
  std::size_t candidates = 0;
  std::size_t classes = 0;
  double insecureBound = 0.0;
  bool holds = false;  // candidates > insecureBound
};

CoveringArithmetic covering_arithmetic(const SecureParams& params, std::size_t subpathLength);

enum class EvalMode { automatic, exact, monte_carlo };

struct SecureReport {
  Subpath window;
  ProbabilityReport probability;
  bool isSecure = false;
  bool internal = false;  // internal to the scanned region
};

/// Candidate windows [i - r, i + r] for the centres i whose window is internal
/// to `region`, in left-to-right order.
std::vector<Subpath> candidate_windows(const SecureParams& params, Subpath region);

/// Evaluates every candidate window of `region` inside the full instance.
/// Estimated windows are declared secure only if the 99% lower bound reaches
/// 1 - delta. Throws if the region admits no candidate.
std::vector<SecureReport> scan_secure(const Decider& d, const Instance& inst,
                                      const SecureParams& params, Subpath region,
                                      EvalMode mode = EvalMode::automatic,
                                      std::uint64_t trials = 10'000, std::uint64_t seed = 0);

struct Fact1Witness {
  Subpath subpath;
  Subpath window;  // leftmost secure candidate
};

struct Fact1Result {
  bool verdict = false;
  std::size_t ell = 0;
  std::vector<Fact1Witness> witnesses;
  std::optional<Subpath> firstFailure;
  std::size_t failingSubpaths = 0;
  /// Every distinct candidate window, evaluated once, ordered by position.
  std::vector<SecureReport> windows;
};

/// Checks that every subpath of length ell(delta, lambda) contains an internal
/// secure window. When `lang` is given, the instance must belong to it.
Fact1Result verify_fact1(const Decider& d, const Instance& inst, const SecureParams& params,
                         EvalMode mode = EvalMode::automatic, std::uint64_t trials = 10'000,
                         std::uint64_t seed = 0, const Language* lang = nullptr);

}  // namespace locdec
