#pragma once

// Synchronous execution of deciders and probabilities of all-yes events.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "locdec/core.hpp"
#include "locdec/decider.hpp"

namespace locdec {

struct OutcomeVector {
  std::vector<Verdict> outputs;

  bool accepted() const;
  bool all_yes_on(std::span<const NodeIndex> nodes) const;
  bool operator==(const OutcomeVector&) const = default;
};

/// A set of node positions, remembered as "all", a contiguous range, or an
/// explicit list so reports can describe it compactly.
class NodeSet {
 public:
  static NodeSet all(std::size_t n);
  static NodeSet range(Subpath s);
  static NodeSet of(std::vector<NodeIndex> nodes);

  const std::vector<NodeIndex>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool is_all() const { return all_; }
  /// Set when the nodes form one ascending run lo..hi.
  std::optional<Subpath> as_range() const;

  bool operator==(const NodeSet&) const = default;

 private:
  std::vector<NodeIndex> nodes_;
  bool all_ = false;
};

enum class ReportKind { exact, estimated };

struct ProbabilityReport {
  ReportKind kind = ReportKind::exact;
  double value = 0.0;
  std::optional<std::uint64_t> trials;
  std::optional<double> ciLow;
  std::optional<double> ciHigh;
  NodeSet nodes;
  std::optional<std::string> rational;  // exact value as "num/den" when known

  /// Lower end of the 99% interval for estimates; the value itself when exact.
  double lower() const { return ciLow.value_or(value); }
  double upper() const { return ciHigh.value_or(value); }
};

/// One synchronous execution: every node decides from its radius-t view and its
/// own coin stream.
OutcomeVector run(const Decider& d, const Instance& inst, TrialSeed seed);

/// Product of per-node yes-probabilities over `nodes`. Throws
/// std::invalid_argument for deciders that are not zero-round independent.
ProbabilityReport exact_all_yes(const Decider& d, const Instance& inst, const NodeSet& nodes);

/// Same product carried out in exact rational arithmetic; nullopt when some
/// node's probability is not rational.
std::optional<Rational> exact_all_yes_rational(const Decider& d, const Instance& inst,
                                               const NodeSet& nodes);

struct EstimateOptions {
  std::size_t workers = 0;  // 0 = hardware concurrency
};

/// Fraction of `trials` executions in which every node of `nodes` says yes,
/// with a 99% Wilson interval. Identical output for any worker count.
ProbabilityReport estimate_all_yes(const Decider& d, const Instance& inst, const NodeSet& nodes,
                                   std::uint64_t trials, std::uint64_t master,
                                   EstimateOptions options = {});

/// Exact when the decider allows it, otherwise Monte Carlo.
ProbabilityReport all_yes(const Decider& d, const Instance& inst, const NodeSet& nodes,
                          std::uint64_t trials, std::uint64_t master, bool preferExact = true);

inline constexpr double kZ99 = 2.5758293035489004;

struct Interval {
  double lo;
  double hi;
};

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ99);

/// How a block enters the union bound: independent blocks are multiplied
/// together, separator blocks each add their failure probability.
enum class BlockRole { independent, separator };

struct UnionBlock {
  ProbabilityReport report;
  BlockRole role = BlockRole::independent;
};

struct UnionBoundDiagnostic {
  double bound = 0.0;                        // (1 - prod independent) + sum(1 - separator)
  std::optional<double> measuredNo;          // 1 - Pr[all of V say yes]
  std::optional<bool> respected;             // measured no-probability <= bound
};

/// Blocks must partition 1..n; overlapping or missing nodes throw.
UnionBoundDiagnostic union_bound_check(std::span<const UnionBlock> blocks, std::size_t n,
                                       const std::optional<ProbabilityReport>& full = std::nullopt);

}  // namespace locdec
