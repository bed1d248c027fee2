#include "locdec/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace locdec {

bool OutcomeVector::accepted() const {
  return std::all_of(outputs.begin(), outputs.end(), [](Verdict v) { return v == Verdict::yes; });
}

bool OutcomeVector::all_yes_on(std::span<const NodeIndex> nodes) const {
  return std::all_of(nodes.begin(), nodes.end(),
                     [&](NodeIndex v) { return outputs.at(v - 1) == Verdict::yes; });
}

NodeSet NodeSet::all(std::size_t n) {
  NodeSet s;
  s.nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.nodes_[i] = i + 1;
  s.all_ = true;
  return s;
}

NodeSet NodeSet::range(Subpath r) {
  NodeSet s;
  s.nodes_.reserve(r.length());
  for (NodeIndex v = r.lo; v <= r.hi; ++v) s.nodes_.push_back(v);
  return s;
}

NodeSet NodeSet::of(std::vector<NodeIndex> nodes) {
  NodeSet s;
  s.nodes_ = std::move(nodes);
  return s;
}

std::optional<Subpath> NodeSet::as_range() const {
  if (nodes_.empty()) return std::nullopt;
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (nodes_[i] != nodes_[i - 1] + 1) return std::nullopt;
  }
  return Subpath(nodes_.front(), nodes_.back());
}

namespace {

void check_nodes(const Instance& inst, const NodeSet& nodes) {
  for (NodeIndex v : nodes.nodes()) {
    if (v < 1 || v > inst.size()) throw std::out_of_range("event node outside the instance");
  }
}

const ZeroRoundIndependent& require_zero_round(const Decider& d) {
  const auto* z = d.zero_round();
  if (z == nullptr || d.rounds() != 0) {
    throw std::invalid_argument("decider '" + d.name() +
                                "' is not a zero-round independent-coin decider");
  }
  return *z;
}

}  // namespace

OutcomeVector run(const Decider& d, const Instance& inst, TrialSeed seed) {
  OutcomeVector out;
  out.outputs.reserve(inst.size());
  const std::size_t t = d.rounds();
  for (NodeIndex v = 1; v <= inst.size(); ++v) {
    RandomStream coins(seed, inst.id(v));
    out.outputs.push_back(d.decide(ball(inst, v, t), coins));
  }
  return out;
}

ProbabilityReport exact_all_yes(const Decider& d, const Instance& inst, const NodeSet& nodes) {
  const auto& z = require_zero_round(d);
  check_nodes(inst, nodes);
  double product = 1.0;
  for (NodeIndex v : nodes.nodes()) product *= z.yes_probability(ball(inst, v, 0));
  ProbabilityReport r;
  r.kind = ReportKind::exact;
  r.value = product;
  r.nodes = nodes;
  if (auto q = exact_all_yes_rational(d, inst, nodes)) r.rational = q->str();
  return r;
}

std::optional<Rational> exact_all_yes_rational(const Decider& d, const Instance& inst,
                                               const NodeSet& nodes) {
  const auto& z = require_zero_round(d);
  check_nodes(inst, nodes);
  Rational product = 1;
  for (NodeIndex v : nodes.nodes()) {
    auto q = z.yes_probability_exact(ball(inst, v, 0));
    if (!q) return std::nullopt;
    product *= *q;
    if (product == 0) break;
  }
  return product;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("Wilson interval needs at least one trial");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  Interval iv{std::clamp(centre - half, 0.0, 1.0), std::clamp(centre + half, 0.0, 1.0)};
  iv.lo = std::min(iv.lo, phat);
  iv.hi = std::max(iv.hi, phat);
  return iv;
}

ProbabilityReport estimate_all_yes(const Decider& d, const Instance& inst, const NodeSet& nodes,
                                   std::uint64_t trials, std::uint64_t master,
                                   EstimateOptions options) {
  if (trials == 0) throw std::invalid_argument("estimate needs at least one trial");
  check_nodes(inst, nodes);

  // Only the nodes of the event matter, and their views do not change between
  // trials.
  const std::size_t t = d.rounds();
  std::vector<View> views;
  std::vector<NodeId> ids;
  views.reserve(nodes.size());
  for (NodeIndex v : nodes.nodes()) {
    views.push_back(ball(inst, v, t));
    ids.push_back(inst.id(v));
  }

  constexpr std::uint64_t kChunk = 2048;
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> hits(chunks, 0);
  std::atomic<bool> usedCoins{false};
  std::atomic<std::uint64_t> nextChunk{0};

  auto worker = [&] {
    bool drew = false;
    for (std::uint64_t c = nextChunk++; c < chunks; c = nextChunk++) {
      const std::uint64_t begin = c * kChunk;
      const std::uint64_t end = std::min(trials, begin + kChunk);
      std::uint64_t count = 0;
      for (std::uint64_t trial = begin; trial < end; ++trial) {
        bool allYes = true;
        for (std::size_t i = 0; i < views.size() && allYes; ++i) {
          RandomStream coins({master, trial}, ids[i]);
          allYes = d.decide(views[i], coins) == Verdict::yes;
          drew = drew || coins.draws() > 0;
        }
        count += allYes ? 1 : 0;
      }
      hits[c] = count;
    }
    if (drew) usedCoins = true;
  };

  std::size_t workers = options.workers ? options.workers : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, static_cast<std::size_t>(chunks));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::uint64_t successes = 0;
  for (auto h : hits) successes += h;

  ProbabilityReport r;
  r.kind = ReportKind::estimated;
  r.value = static_cast<double>(successes) / static_cast<double>(trials);
  r.trials = trials;
  r.nodes = nodes;
  if (usedCoins) {
    const auto iv = wilson_interval(successes, trials);
    r.ciLow = iv.lo;
    r.ciHigh = iv.hi;
  } else {
    // No node ever consulted a coin: the event is deterministic.
    r.ciLow = r.value;
    r.ciHigh = r.value;
  }
  return r;
}

ProbabilityReport all_yes(const Decider& d, const Instance& inst, const NodeSet& nodes,
                          std::uint64_t trials, std::uint64_t master, bool preferExact) {
  if (preferExact && d.rounds() == 0 && d.zero_round() != nullptr) {
    return exact_all_yes(d, inst, nodes);
  }
  return estimate_all_yes(d, inst, nodes, trials, master);
}

UnionBoundDiagnostic union_bound_check(std::span<const UnionBlock> blocks, std::size_t n,
                                       const std::optional<ProbabilityReport>& full) {
  std::vector<bool> covered(n + 1, false);
  for (const auto& b : blocks) {
    for (NodeIndex v : b.report.nodes.nodes()) {
      if (v < 1 || v > n) throw std::out_of_range("union-bound block node outside 1..n");
      if (covered[v]) {
        throw std::invalid_argument("union-bound blocks overlap at node " + std::to_string(v));
      }
      covered[v] = true;
    }
  }
  for (NodeIndex v = 1; v <= n; ++v) {
    if (!covered[v]) {
      throw std::invalid_argument("union-bound blocks miss node " + std::to_string(v));
    }
  }

  double independent = 1.0;
  double separators = 0.0;
  for (const auto& b : blocks) {
    if (b.role == BlockRole::independent) {
      independent *= b.report.value;
    } else {
      separators += 1.0 - b.report.value;
    }
  }
  UnionBoundDiagnostic diag;
  diag.bound = (1.0 - independent) + separators;
  if (full) {
    diag.measuredNo = 1.0 - full->value;
    // An estimate only contradicts the bound if even its optimistic end does.
    diag.respected = 1.0 - full->upper() <= diag.bound + 1e-12;
  }
  return diag;
}

}  // namespace locdec
