#pragma once

// Deterministic deciders on paths: endpoint-marker augmentation, the
// extendability oracle, the ball-extendability decider, and triplet splicing.

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "locdec/core.hpp"
#include "locdec/decider.hpp"
#include "locdec/deciders.hpp"

namespace locdec {

/// L' over Sigma ∪ {marker}: a path whose two endpoints carry the marker, no
/// internal node does, and whose stripped interior is a member of the base.
struct AugmentedLanguage {
  Language base;
  Symbol marker = kMarker;
  Alphabet alphabet;  // base symbols plus the marker

  bool member(const Instance& inst) const;
  bool member(const std::vector<Symbol>& x) const;
  std::string name() const { return base.name + "+marker"; }
};

/// Throws std::invalid_argument if the base alphabet already has a marker.
AugmentedLanguage augment(const Language& base);

/// Path inputs with a marked middle segment (1-based, inclusive).
struct MarkedPath {
  std::vector<Symbol> x;
  Subpath middle;

  bool operator==(const MarkedPath&) const = default;
};

/// Left part of `left`, the shared middle, right part of `right`. Throws
/// std::invalid_argument if the middles differ in length or content.
MarkedPath splice(const MarkedPath& left, const MarkedPath& right);

struct TripletCounterexample {
  MarkedPath left;
  MarkedPath right;
  MarkedPath spliced;
};

struct ClosureResult {
  bool closed = true;
  std::size_t counterexampleCount = 0;
  std::size_t splicesChecked = 0;
  std::vector<TripletCounterexample> counterexamples;  // first `keep` found
};

/// Enumerates member paths with n <= maxN, pairs every two that agree on a
/// middle of length lambda, splices and checks membership. Splices outside the
/// promise are skipped.
ClosureResult triplet_closure_check(const Language& lang, std::size_t lambda, std::size_t maxN,
                                    std::size_t keep = 16);

/// |config| + 2 radius + 2.
std::size_t default_extension_cap(std::size_t configLength, std::size_t radius);

/// Brute force: is there a member of L' of length <= cap containing `config`
/// as a contiguous sub-assignment? Throws std::invalid_argument if cap < |config|.
bool is_extendable_brute(const std::vector<Symbol>& config, const AugmentedLanguage& lang,
                         std::size_t cap);

/// Closed-form answer for augmented AMOS-k and no-adjacent; nullopt for other
/// bases. Assumes an unbounded cap.
std::optional<bool> is_extendable_analytic(const std::vector<Symbol>& config,
                                           const AugmentedLanguage& lang);

enum class OracleKind { analytic, brute };

/// Memoized extendability, safe for concurrent lookups. The analytic kind
/// falls back to brute force when the base has no closed form.
class ExtendabilityOracle {
 public:
  ExtendabilityOracle(AugmentedLanguage lang, OracleKind kind, std::optional<std::size_t> cap = {});

  bool operator()(const std::vector<Symbol>& config, std::size_t radius) const;
  const AugmentedLanguage& language() const { return lang_; }
  OracleKind kind() const { return kind_; }
  std::size_t cache_size() const;

 private:
  AugmentedLanguage lang_;
  OracleKind kind_;
  std::optional<std::size_t> cap_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::vector<Symbol>, bool> memo_;
};

/// Deterministic decider with `radius` rounds. A marker node says yes iff it
/// is a path endpoint; any other node says yes iff its ball is extendable.
/// Throws std::invalid_argument if radius is 0.
DeciderPtr algorithm_D(const AugmentedLanguage& lang, std::size_t radius,
                       OracleKind kind = OracleKind::analytic,
                       std::optional<std::size_t> cap = {});

/// Security length for a (p,q) decider at t rounds with delta = (p^2 + q - 1)/2.
/// Throws std::invalid_argument if p^2 + q <= 1.
std::size_t default_derand_radius(double p, double q, std::size_t t);

}  // namespace locdec
