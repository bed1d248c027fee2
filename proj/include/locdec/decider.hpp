#pragma once

#include <memory>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "locdec/core.hpp"
#include "locdec/rng.hpp"

namespace locdec {

using Rational = boost::multiprecision::cpp_rational;

enum class Verdict : std::uint8_t { no = 0, yes = 1 };

/// Declared success probabilities: members accepted with probability >= p,
/// non-members rejected with probability >= q.
struct Guarantee {
  double p = 1.0;
  double q = 0.0;
};

/// Zero-round deciders whose nodes flip independent coins expose their per-node
/// yes-probability so that all-yes events can be computed exactly.
class ZeroRoundIndependent {
 public:
  virtual ~ZeroRoundIndependent() = default;
  /// `local` is the radius-0 view of the node.
  virtual double yes_probability(const View& local) const = 0;
  virtual std::optional<Rational> yes_probability_exact(const View& /*local*/) const {
    return std::nullopt;
  }
};

/// A t-round node algorithm. Implementations must be stateless and reentrant:
/// the engine calls decide() concurrently for different nodes and trials.
class Decider {
 public:
  virtual ~Decider() = default;

  virtual std::string name() const = 0;
  virtual std::size_t rounds() const = 0;
  virtual Verdict decide(const View& view, RandomStream& coins) const = 0;
  virtual Guarantee declared() const = 0;
  virtual const ZeroRoundIndependent* zero_round() const { return nullptr; }
};

using DeciderPtr = std::shared_ptr<const Decider>;

}  // namespace locdec
