#include "locdec/secure.hpp"

#include <cmath>

namespace locdec {

SecureParams SecureParams::standard(double delta, std::size_t t, double p) {
  return SecureParams{delta, 2 * t + 1, t, p};
}

void SecureParams::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0,1), got " + std::to_string(delta));
  }
  if (lambda < 1) throw std::invalid_argument("lambda must be at least 1");
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("p must lie in (0,1], got " + std::to_string(p));
  }
}

std::size_t ceil_log_ratio(double p, double delta) {
  const double ratio = std::log(p) / std::log1p(-delta);
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-12 * std::max(1.0, std::abs(ratio))) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(ratio));
}

SecurityLength security_length(const SecureParams& params) {
  params.validate();
  SecurityLength out;
  if (params.p == 1.0) {
    out.degenerate = true;
    out.warning = "p = 1 makes log p / log(1 - delta) vanish; security length is 0";
    return out;
  }
  out.nodes = 4 * (params.lambda + 2 * params.t) * ceil_log_ratio(params.p, params.delta);
  return out;
}

std::size_t window_radius(std::size_t lambda) { return lambda / 2; }

CoveringArithmetic covering_arithmetic(const SecureParams& params, std::size_t subpathLength) {
  params.validate();
  const std::size_t r = window_radius(params.lambda);
  CoveringArithmetic c;
  const std::size_t margin = 2 * (r + params.t + 1);
  c.candidates = subpathLength > margin ? subpathLength - margin : 0;
  c.classes = 2 * (params.t + r) + 1;
  c.insecureBound =
      static_cast<double>(c.classes) * std::log(params.p) / std::log1p(-params.delta);
  c.holds = static_cast<double>(c.candidates) > c.insecureBound;
  return c;
}

std::vector<Subpath> candidate_windows(const SecureParams& params, Subpath region) {
  params.validate();
  const std::size_t r = window_radius(params.lambda);
  const std::size_t d = region.length();
  std::vector<Subpath> out;
  // Local centres i with r+t+1 < i < d-r-t.
  const std::size_t first = r + params.t + 2;
  for (std::size_t i = first; i + r + params.t + 1 <= d; ++i) {
    const NodeIndex centre = region.lo + i - 1;
    out.emplace_back(centre - r, centre + r);
  }
  return out;
}

namespace {

bool use_exact(const Decider& d, EvalMode mode) {
  switch (mode) {
    case EvalMode::exact:
      return true;
    case EvalMode::monte_carlo:
      return false;
    case EvalMode::automatic:
      break;
  }
  return d.rounds() == 0 && d.zero_round() != nullptr;
}

SecureReport evaluate_window(const Decider& d, const Instance& inst, const SecureParams& params,
                             Subpath window, Subpath region, bool exact, std::uint64_t trials,
                             std::uint64_t seed) {
  SecureReport rep;
  rep.window = window;
  const auto nodes = NodeSet::range(window);
  rep.probability = exact ? exact_all_yes(d, inst, nodes)
                          : estimate_all_yes(d, inst, nodes, trials, seed ^ splitmix64(window.lo));
  const double threshold = 1.0 - params.delta;
  rep.isSecure = exact ? rep.probability.value >= threshold - 1e-12
                       : rep.probability.lower() >= threshold;
  rep.internal = window.lo >= region.lo &&
                 is_internal(Subpath(window.lo - region.lo + 1, window.hi - region.lo + 1),
                             params.t, region.length());
  return rep;
}

}  // namespace

std::vector<SecureReport> scan_secure(const Decider& d, const Instance& inst,
                                      const SecureParams& params, Subpath region, EvalMode mode,
                                      std::uint64_t trials, std::uint64_t seed) {
  params.validate();
  if (region.hi > inst.size()) throw std::out_of_range("scan region extends past the instance");
  if (trials == 0) throw std::invalid_argument("scan needs at least one trial");
  const auto windows = candidate_windows(params, region);
  if (windows.empty()) {
    throw std::invalid_argument("region of length " + std::to_string(region.length()) +
                                " has no internal window of length >= " +
                                std::to_string(params.lambda) + " for t = " +
                                std::to_string(params.t));
  }
  const bool exact = use_exact(d, mode);
  std::vector<SecureReport> out;
  out.reserve(windows.size());
  for (const auto& w : windows) {
    out.push_back(evaluate_window(d, inst, params, w, region, exact, trials, seed));
  }
  return out;
}

Fact1Result verify_fact1(const Decider& d, const Instance& inst, const SecureParams& params,
                         EvalMode mode, std::uint64_t trials, std::uint64_t seed,
                         const Language* lang) {
  params.validate();
  if (inst.topology() != Topology::path) throw std::invalid_argument("secure scans run on paths");
  if (lang != nullptr && !lang->member(inst)) {
    throw std::invalid_argument("instance is not a member of " + lang->name);
  }
  const auto len = security_length(params);
  if (len.degenerate) throw std::invalid_argument(len.warning);
  const std::size_t ell = len.nodes;
  const std::size_t n = inst.size();
  if (n < ell) {
    throw std::invalid_argument("instance has " + std::to_string(n) +
                                " nodes, fewer than the security length " + std::to_string(ell));
  }

  Fact1Result res;
  res.ell = ell;
  const bool exact = use_exact(d, mode);
  const std::size_t r = window_radius(params.lambda);

  // Candidate centres over all subpaths form one contiguous run; evaluate each
  // window once and index it by centre.
  const NodeIndex firstCentre = r + params.t + 2;
  const NodeIndex lastCentre = n - r - params.t - 1;
  std::vector<SecureReport> byCentre;
  for (NodeIndex c = firstCentre; c <= lastCentre; ++c) {
    byCentre.push_back(evaluate_window(d, inst, params, Subpath(c - r, c + r), Subpath(1, n),
                                       exact, trials, seed));
  }

  for (NodeIndex s = 1; s + ell - 1 <= n; ++s) {
    const Subpath sub(s, s + ell - 1);
    std::optional<Subpath> witness;
    for (const auto& w : candidate_windows(params, sub)) {
      const auto& rep = byCentre[w.lo + r - firstCentre];
      if (rep.isSecure) {
        witness = w;
        break;
      }
    }
    if (witness) {
      res.witnesses.push_back({sub, *witness});
    } else {
      ++res.failingSubpaths;
      if (!res.firstFailure) res.firstFailure = sub;
    }
  }
  res.verdict = res.failingSubpaths == 0;
  res.windows = std::move(byCentre);
  return res;
}

}  // namespace locdec
