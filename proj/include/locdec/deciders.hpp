#pragma once

// Distributed languages, the concrete deciders used throughout the lab, and
// placement of (p,q) pairs in the B_k / C_r threshold hierarchy.

#include <functional>
#include <optional>
#include <string>

#include "locdec/core.hpp"
#include "locdec/decider.hpp"
#include "locdec/engine.hpp"

namespace locdec {

enum class LanguageFamily { amos, amos_promise, tree, no_adjacent, all, custom };

struct Language {
  std::string name;
  Alphabet alphabet;
  std::function<bool(const Instance&)> member;
  /// Input restriction; empty means every instance is admissible.
  std::function<bool(const Instance&)> promise;

  LanguageFamily family = LanguageFamily::custom;
  std::size_t k = 0;  // amos: bound; amos_promise: a
  std::size_t b = 0;  // amos_promise only

  bool admissible(const Instance& inst) const { return !promise || promise(inst); }
};

/// At most k nodes carry input 1 (over {0,1}).
Language amos_k_language(std::size_t k);
/// Acyclic networks with empty input. Throws on non-empty inputs.
Language tree_language();
/// At most a selected nodes, under the promise that the count is not in [a+1, a+b-1].
Language amos_promise_language(std::size_t a, std::size_t b);
/// No two adjacent nodes carry input 1. Locally checkable.
Language no_adjacent_language();
/// Every instance over the given alphabet.
Language all_language(Alphabet alphabet = Alphabet::binary());

/// Zero-round: unselected nodes say yes; selected nodes say yes w.p. p^(1/k).
/// Declares (p, 1 - p^(1+1/k)), the infimum attained at k+1 selected nodes.
DeciderPtr amos_k_decider(std::size_t k, double p);
/// Selected nodes say yes w.p. p^(1/a). Declares (p, 1 - p^((a+b)/a)), the
/// rejection guarantee under the promise with gap parameter b.
DeciderPtr amos_promise_decider(std::size_t a, double p, std::size_t b = 1);
DeciderPtr always_yes_decider();
/// Every node says yes independently with probability p.
DeciderPtr coin_decider(double p);
/// Same, with an exact rational probability num/den.
DeciderPtr coin_decider(std::uint64_t num, std::uint64_t den);
/// The node carrying identity `badId` always says no; everyone else says yes.
/// Claims (1, 0), which is false on any instance containing that identity.
DeciderPtr fixed_id_rejector(NodeId badId);
/// t-round: a node that sees a path endpoint says yes; otherwise yes w.p. p.
DeciderPtr endpoint_witness_decider(std::size_t t, double p);
/// t-round randomized decider whose coin bias depends on the whole view:
/// yes w.p. 1/(1 + number of selected nodes visible), tilted by identities.
DeciderPtr neighbourhood_coin_decider(std::size_t t);

struct ThresholdClass {
  enum class Kind { finite, infinity, none };
  Kind kind = Kind::none;
  std::size_t k = 0;  // meaningful for Kind::finite

  /// Position in the order B_1 < B_2 < ... < B_inf < none.
  std::size_t rank() const;
  std::string to_string() const;
  bool operator==(const ThresholdClass&) const = default;
};

/// Margin used for the strict inequality p^e + q > 1, absorbing rounding in
/// values that sit exactly on a class boundary.
inline constexpr double kThresholdMargin = 1e-12;
inline constexpr std::size_t kMaxThresholdK = 1'000'000;

/// Smallest k >= 1 with p^(1+1/k) + q > 1; infinity if only p + q > 1; none otherwise.
ThresholdClass classify_threshold(double p, double q);
/// Membership test for C_r: p^(1+1/r) + q > 1, for any real r > 0.
bool in_class_c(double p, double q, double r);

struct InstanceFamily {
  Alphabet alphabet = Alphabet::binary();
  bool paths = true;
  bool cycles = false;
  std::size_t minN = 1;
  /// Extra random identity permutations tried per instance (besides 1..n).
  std::size_t idPermutations = 0;
  std::uint64_t seed = 0;
};

/// Calls `visit` for every instance of the family with minN <= n <= maxN.
void for_each_instance(const InstanceFamily& family, std::size_t maxN,
                       const std::function<void(const Instance&)>& visit);

struct PQMeasurement {
  std::optional<double> pHat;  // min over members of Pr[all yes]
  std::optional<Instance> pWitness;
  std::optional<double> qHat;  // min over non-members of Pr[some no]
  std::optional<Instance> qWitness;
  std::size_t members = 0;
  std::size_t nonMembers = 0;
  std::size_t excluded = 0;  // instances outside the promise
  bool exact = true;
  bool verdict = false;
};

/// Exhaustive (p,q) measurement over a family. Exact probabilities are used for
/// zero-round independent deciders, Monte Carlo with `trials` otherwise.
PQMeasurement verify_pq(const Decider& d, const Language& lang, const InstanceFamily& family,
                        std::size_t maxN, std::uint64_t trials = 10'000,
                        std::uint64_t seed = 0);

}  // namespace locdec
