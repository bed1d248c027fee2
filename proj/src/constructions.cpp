#include "locdec/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace locdec {

double separation_delta_bound(std::size_t a, std::size_t b, double p, double eps) {
  const double aa = static_cast<double>(a);
  const double bb = static_cast<double>(b);
  return std::pow(p, 1.0 + bb / aa) * (1.0 - std::pow(p, eps)) / (aa + bb - 1.0);
}

namespace {

std::vector<Symbol> leader_input(std::size_t n, const std::vector<NodeIndex>& leaders) {
  std::vector<Symbol> x(n, kZero);
  for (NodeIndex u : leaders) x[u - 1] = kOne;
  return x;
}

std::vector<NodeIndex> choose_dropped(const SeparationPair& pair, const Decider* d) {
  const std::size_t m = pair.leaders.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  if (d != nullptr) {
    const auto blocks = separation_blocks(pair, *d);
    // Most likely blocks first; ties go to the later leader.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      if (blocks.blockYes[i] != blocks.blockYes[j]) return blocks.blockYes[i] > blocks.blockYes[j];
      return i > j;
    });
  } else {
    std::reverse(order.begin(), order.end());
  }
  std::vector<NodeIndex> dropped;
  for (std::size_t i = 0; i < pair.b; ++i) dropped.push_back(pair.leaders[order[i]]);
  std::sort(dropped.begin(), dropped.end());
  return dropped;
}

SeparationPair build_pair(std::size_t a, std::size_t b, double p, double eps, std::size_t t,
                          const Decider* d, bool rational) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in (0,1]");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
  SeparationPair pair;
  pair.a = a;
  pair.b = b;
  pair.rational = rational;
  pair.p = p;
  pair.epsilon = eps;
  pair.t = t;
  pair.deltaBound = separation_delta_bound(a, b, p, eps);
  if (!(pair.deltaBound > 0.0)) {
    throw std::invalid_argument("the admissible delta interval (0, " +
                                std::to_string(pair.deltaBound) + ") is empty");
  }
  pair.delta = pair.deltaBound / 2.0;
  pair.ell = security_length(SecureParams::standard(pair.delta, t, p)).nodes;

  const std::size_t m = a + b;
  const std::size_t ell = pair.ell;
  const std::size_t n = (m - 1) * (ell + 1) + 1;
  pair.leaders.push_back(1);
  for (std::size_t i = 2; i <= m; ++i) pair.leaders.push_back((i - 1) * ell + i);
  for (std::size_t i = 1; i < m; ++i) {
    pair.segments.emplace_back((i - 1) * ell + i + 1, i * ell + i);
  }

  pair.illegal = make_path(leader_input(n, pair.leaders));
  pair.legal = pair.illegal;  // placeholder until the dropped leaders are known
  pair.dropped = choose_dropped(pair, d);
  std::vector<NodeIndex> kept;
  std::set_difference(pair.leaders.begin(), pair.leaders.end(), pair.dropped.begin(),
                      pair.dropped.end(), std::back_inserter(kept));
  pair.legal = make_path(leader_input(n, kept));
  return pair;
}

}  // namespace

SeparationPair thm1_instances(std::size_t k, double p, double eps, std::size_t t,
                              const Decider* d) {
  if (k == 0) throw std::invalid_argument("separation needs k >= 1");
  return build_pair(k, 1, p, eps, t, d, false);
}

std::pair<std::size_t, std::size_t> simplest_rational(double r, double rPrime, std::size_t cap) {
  if (!(r > 0.0 && r < rPrime)) {
    throw std::invalid_argument("need 0 < r < r', got [" + std::to_string(r) + ", " +
                                std::to_string(rPrime) + ")");
  }
  std::size_t ln = 0, ld = 1;  // left bound 0/1
  std::size_t rn = 1, rd = 0;  // right bound 1/0
  while (true) {
    const std::size_t mn = ln + rn;
    const std::size_t md = ld + rd;
    if (mn > cap || md > cap) {
      throw std::runtime_error("no fraction with numerator and denominator <= " +
                               std::to_string(cap) + " in the interval");
    }
    const double num = static_cast<double>(mn);
    const double den = static_cast<double>(md);
    if (num < r * den) {
      ln = mn;
      ld = md;
    } else if (num >= rPrime * den) {
      rn = mn;
      rd = md;
    } else {
      return {mn, md};
    }
  }
}

SeparationPair thm4_instances(double r, double rPrime, double p, double eps, std::size_t t,
                              const Decider* d) {
  const auto [a, b] = simplest_rational(r, rPrime);
  return build_pair(a, b, p, eps, t, d, true);
}

SeparationBlocks separation_blocks(const SeparationPair& pair, const Decider& d,
                                   std::uint64_t trials, std::uint64_t seed) {
  SeparationBlocks out;
  const auto params = SecureParams::standard(pair.delta, pair.t, pair.p);
  for (const auto& seg : pair.segments) {
    const auto reports = scan_secure(d, pair.illegal, params, seg, EvalMode::automatic, trials, seed);
    auto it = std::find_if(reports.begin(), reports.end(), [](const auto& r) { return r.isSecure; });
    if (it == reports.end()) {
      out.allSecure = false;
      it = reports.begin() + static_cast<std::ptrdiff_t>(reports.size() / 2);
    }
    out.secureWindows.push_back(it->window);
  }

  const std::size_t n = pair.illegal.size();
  NodeIndex start = 1;
  for (const auto& w : out.secureWindows) {
    out.blocks.emplace_back(start, w.lo - 1);
    start = w.hi + 1;
  }
  out.blocks.emplace_back(start, n);

  std::uint64_t salt = 0;
  for (const auto& blk : out.blocks) {
    const auto rep = all_yes(d, pair.illegal, NodeSet::range(blk), trials, seed ^ splitmix64(++salt));
    out.blockYes.push_back(rep.value);
  }
  return out;
}

RatioDiagnostic ratio_check(const SeparationPair& pair, const Decider& d, std::uint64_t trials,
                            std::uint64_t seed) {
  RatioDiagnostic diag;
  diag.exact = d.rounds() == 0 && d.zero_round() != nullptr;
  const auto n = pair.legal.size();
  diag.prLegalYes = all_yes(d, pair.legal, NodeSet::all(n), trials, seed).value;
  diag.prIllegalYes = all_yes(d, pair.illegal, NodeSet::all(n), trials, seed ^ 0x5bd1e995ULL).value;
  if (diag.prLegalYes == 0.0) {
    throw std::invalid_argument("the legal instance is never accepted; the ratio is undefined");
  }
  diag.rho = diag.prIllegalYes / diag.prLegalYes;

  diag.blocks = separation_blocks(pair, d, trials, seed);
  diag.droppedProduct = 1.0;
  for (NodeIndex u : pair.dropped) {
    const auto idx = static_cast<std::size_t>(
        std::find(pair.leaders.begin(), pair.leaders.end(), u) - pair.leaders.begin());
    diag.droppedProduct *= diag.blocks.blockYes[idx];
  }

  const double inv = static_cast<double>(pair.b) / static_cast<double>(pair.a);  // 1 / rhat
  const double slack = static_cast<double>(pair.a + pair.b - 1) * pair.delta / pair.p;
  diag.upperBound = std::pow(pair.p, inv + pair.epsilon);
  diag.lowerBound = std::pow(pair.p, inv) - slack;
  diag.blockLowerBound = diag.droppedProduct - slack;
  diag.upperHolds = diag.rho < diag.upperBound;
  diag.lowerHolds = diag.rho >= diag.lowerBound - 1e-12;
  diag.boundsInconsistent = diag.lowerBound >= diag.upperBound;
  diag.contradiction = diag.boundsInconsistent && !(diag.upperHolds && diag.lowerHolds);
  diag.premiseHolds = std::pow(pair.p, 1.0 + inv + pair.epsilon) + d.declared().q > 1.0;
  return diag;
}

TreeSetup tree_setup(std::size_t n, std::size_t t, double delta) {
  if (n < 4 * t + 4) {
    throw std::invalid_argument("path/cycle setup needs n >= 4t + 4, got n = " +
                                std::to_string(n) + ", t = " + std::to_string(t));
  }
  TreeSetup s;
  s.n = n;
  s.t = t;
  s.x = n / 2;
  s.delta = delta;
  const std::vector<Symbol> eps(n, kEmpty);
  s.pathId1 = make_path(eps);
  std::vector<NodeId> id2(n);
  for (std::size_t i = 1; i <= n; ++i) id2[i - 1] = (s.x + i - 1) % n + 1;
  s.pathId2 = make_path(eps, id2);
  s.cycle = make_cycle(eps);
  s.s = Subpath(s.x - t, s.x + t + 1);
  for (NodeIndex c = s.x + t + 2; c <= n; ++c) s.sPrimeCycle.push_back(c);
  for (NodeIndex c = 1; c + t + 1 <= s.x; ++c) s.sPrimeCycle.push_back(c);
  s.sPrimePath2 = Subpath(t + 2, n - t - 1);
  return s;
}

TreeSetup thm2_setup(double p, double q, std::size_t t) {
  if (!(p > 0.0 && p <= 1.0 && q > 0.0 && q <= 1.0)) {
    throw std::invalid_argument("p and q must lie in (0,1]");
  }
  if (p + q <= 1.0) {
    throw std::invalid_argument("p + q must exceed 1 for the path/cycle argument");
  }
  const double delta = (p + q - 1.0) / 2.0;
  std::size_t nBound = 0;
  double perNode = 0.0;  // allowed rounds per node; infinite when p = 1
  if (p < 1.0) {
    const double ratio = 21.0 * std::log(p) / std::log1p(-delta);
    const double nearest = std::round(ratio);
    nBound = std::abs(ratio - nearest) <= 1e-12 * std::max(1.0, ratio)
                 ? static_cast<std::size_t>(nearest)
                 : static_cast<std::size_t>(std::ceil(ratio));
    perNode = 1.0 / ratio;
  }
  std::size_t n = std::max<std::size_t>(nBound + 1, 4 * t + 4);
  if (p < 1.0) {
    while (static_cast<std::size_t>(std::floor(perNode * static_cast<double>(n))) < t) ++n;
  }
  auto setup = tree_setup(n, t, delta);
  setup.p = p;
  setup.q = q;
  setup.nBound = nBound;
  return setup;
}

ViewEquality tree_view_equality(const TreeSetup& setup, std::size_t t) {
  ViewEquality eq;
  eq.s = true;
  for (NodeIndex v = setup.s.lo; v <= setup.s.hi; ++v, ++eq.compared) {
    eq.s = eq.s && ball(setup.pathId1, v, t) == ball(setup.cycle, v, t);
  }
  eq.sPrime = true;
  for (std::size_t i = 0; i < setup.sPrimeCycle.size(); ++i, ++eq.compared) {
    eq.sPrime = eq.sPrime && ball(setup.pathId2, setup.sPrimePath2.lo + i, t) ==
                                 ball(setup.cycle, setup.sPrimeCycle[i], t);
  }
  return eq;
}

namespace {

ProbabilityReport count_report(std::uint64_t hits, std::uint64_t trials, bool drew, NodeSet nodes) {
  ProbabilityReport r;
  r.kind = ReportKind::estimated;
  r.value = static_cast<double>(hits) / static_cast<double>(trials);
  r.trials = trials;
  r.nodes = std::move(nodes);
  if (drew) {
    const auto iv = wilson_interval(hits, trials);
    r.ciLow = iv.lo;
    r.ciHigh = iv.hi;
  } else {
    r.ciLow = r.value;
    r.ciHigh = r.value;
  }
  return r;
}

struct ViewBank {
  std::vector<View> views;
  std::vector<NodeId> ids;

  ViewBank(const Instance& inst, const std::vector<NodeIndex>& nodes, std::size_t t) {
    for (NodeIndex v : nodes) {
      views.push_back(ball(inst, v, t));
      ids.push_back(inst.id(v));
    }
  }

  std::vector<Verdict> decide(const Decider& d, TrialSeed seed, bool& drew) const {
    std::vector<Verdict> out;
    out.reserve(views.size());
    for (std::size_t i = 0; i < views.size(); ++i) {
      RandomStream coins(seed, ids[i]);
      out.push_back(d.decide(views[i], coins));
      drew = drew || coins.draws() > 0;
    }
    return out;
  }
};

bool all_yes_verdicts(const std::vector<Verdict>& v) {
  return std::all_of(v.begin(), v.end(), [](Verdict x) { return x == Verdict::yes; });
}

}  // namespace

TreeUnionDiagnostic thm2_union_check(const TreeSetup& setup, const Decider& d,
                                     std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("union check needs at least one trial");
  const std::size_t t = d.rounds();
  const auto sNodes = NodeSet::range(setup.s).nodes();
  const auto sPrimePath = NodeSet::range(setup.sPrimePath2).nodes();

  const ViewBank p1(setup.pathId1, sNodes, t);
  const ViewBank p2(setup.pathId2, sPrimePath, t);
  const ViewBank cs(setup.cycle, sNodes, t);
  const ViewBank csp(setup.cycle, setup.sPrimeCycle, t);

  std::uint64_t hitP1 = 0, hitCS = 0, hitP2 = 0, hitCSP = 0, hitCAll = 0;
  bool equalS = true, equalSP = true, drew = false;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const TrialSeed ts{seed, trial};
    const auto o1 = p1.decide(d, ts, drew);
    const auto oc = cs.decide(d, ts, drew);
    const auto o2 = p2.decide(d, ts, drew);
    const auto ocp = csp.decide(d, ts, drew);
    equalS = equalS && o1 == oc;
    equalSP = equalSP && o2 == ocp;
    const bool yS = all_yes_verdicts(o1), yCS = all_yes_verdicts(oc);
    const bool yP2 = all_yes_verdicts(o2), yCSP = all_yes_verdicts(ocp);
    hitP1 += yS;
    hitCS += yCS;
    hitP2 += yP2;
    hitCSP += yCSP;
    hitCAll += yCS && yCSP;
  }

  TreeUnionDiagnostic diag;
  diag.pathS = count_report(hitP1, trials, drew, NodeSet::range(setup.s));
  diag.cycleS = count_report(hitCS, trials, drew, NodeSet::range(setup.s));
  diag.pathSPrime = count_report(hitP2, trials, drew, NodeSet::range(setup.sPrimePath2));
  diag.cycleSPrime = count_report(hitCSP, trials, drew, NodeSet::of(setup.sPrimeCycle));
  diag.cycleAll = count_report(hitCAll, trials, drew, NodeSet::all(setup.n));
  diag.claimQ1Equal = equalS;
  diag.claimQ2Equal = equalSP;
  diag.sSecureOnPath = diag.pathS.lower() >= 1.0 - setup.delta;
  diag.unionBound = (1.0 - diag.pathSPrime.value) + (1.0 - diag.pathS.value);
  diag.measuredRejection = 1.0 - diag.cycleAll.value;
  diag.boundRespected = diag.measuredRejection <= diag.unionBound + 1e-12;
  diag.claimedQ = setup.q;
  diag.claimedQPlausible = setup.q <= 1.0 - diag.cycleAll.lower() + 1e-12;
  diag.claimedQWithinBound = setup.q <= diag.unionBound + 1e-12;
  diag.deltaTransfer = !diag.sSecureOnPath || diag.cycleS.lower() >= 1.0 - setup.delta;
  return diag;
}

}  // namespace locdec
