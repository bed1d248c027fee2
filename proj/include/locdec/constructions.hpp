#pragma once

// Adversarial instance generators: the legal/illegal leader pairs that separate
// consecutive threshold classes, and the path-versus-cycle setup showing that
// acyclicity escapes the whole hierarchy.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "locdec/core.hpp"
#include "locdec/deciders.hpp"
#include "locdec/engine.hpp"
#include "locdec/secure.hpp"

namespace locdec {

/// A legal instance with `a` leaders and an illegal one on the same path and
/// identities with `a + b` leaders, consecutive leaders separated by segments
/// of length ell(delta). The integer case uses a = k, b = 1.
struct SeparationPair {
  Instance legal;
  Instance illegal;
  std::vector<NodeIndex> leaders;   // u_1 .. u_{a+b}
  std::vector<NodeIndex> dropped;   // leaders absent from the legal instance
  std::vector<Subpath> segments;    // S_1 .. S_{a+b-1}
  std::size_t a = 1;
  std::size_t b = 1;
  bool rational = false;  // built from a real interval rather than an integer k
  double p = 0.5;
  double epsilon = 0.1;
  double deltaBound = 0.0;  // open upper end of the admissible delta interval
  double delta = 0.0;
  std::size_t t = 0;
  std::size_t ell = 0;

  double rhat() const { return static_cast<double>(a) / static_cast<double>(b); }
};

/// p^(1 + b/a) (1 - p^eps) / (a + b - 1).
double separation_delta_bound(std::size_t a, std::size_t b, double p, double eps);

/// Integer separation for AMOS-k. With a decider, the dropped leader is the one
/// whose block is most likely to accept; otherwise the last leader.
SeparationPair thm1_instances(std::size_t k, double p, double eps, std::size_t t,
                              const Decider* d = nullptr);

/// Smallest-denominator fraction a/b in [r, rPrime), by Stern–Brocot descent.
/// Throws std::runtime_error if numerator or denominator would exceed `cap`.
std::pair<std::size_t, std::size_t> simplest_rational(double r, double rPrime,
                                                      std::size_t cap = 10'000);

/// Promise separation: picks a/b in [r, rPrime) and builds the a versus a+b
/// leader pair; both instances satisfy the promise.
SeparationPair thm4_instances(double r, double rPrime, double p, double eps, std::size_t t,
                              const Decider* d = nullptr);

/// Secure windows inside each segment and the leader blocks they delimit in
/// the illegal instance.
struct SeparationBlocks {
  std::vector<Subpath> secureWindows;  // S'_i, leftmost secure candidate in S_i
  bool allSecure = true;               // false if some segment had none (middle used)
  std::vector<Subpath> blocks;         // T_1 .. T_{a+b}
  std::vector<double> blockYes;        // Pr[all of T_i say yes] in the illegal instance
};

SeparationBlocks separation_blocks(const SeparationPair& pair, const Decider& d,
                                   std::uint64_t trials = 10'000, std::uint64_t seed = 0);

struct RatioDiagnostic {
  double prLegalYes = 0.0;    // Pr(Y)
  double prIllegalYes = 0.0;  // Pr(Y')
  double rho = 0.0;           // Pr(Y') / Pr(Y)
  SeparationBlocks blocks;
  double droppedProduct = 0.0;  // product of p_j over dropped leaders' blocks
  double upperBound = 0.0;      // p^(1/rhat + eps)
  double lowerBound = 0.0;      // p^(1/rhat) - (a+b-1) delta / p
  double blockLowerBound = 0.0; // droppedProduct - (a+b-1) delta / p
  bool upperHolds = false;      // rho < upperBound
  bool lowerHolds = false;      // rho >= lowerBound
  bool boundsInconsistent = false;  // lowerBound >= upperBound: no decider meets both
  bool contradiction = false;       // inconsistent bounds and this decider misses one
  bool premiseHolds = false;        // declared (p,q) satisfies p^(1+1/rhat+eps) + q > 1
  bool exact = true;
};

/// Throws std::invalid_argument if Pr(Y) = 0.
RatioDiagnostic ratio_check(const SeparationPair& pair, const Decider& d,
                            std::uint64_t trials = 10'000, std::uint64_t seed = 0);

/// Path and cycle on the same n nodes with empty inputs.
struct TreeSetup {
  std::size_t n = 0;
  std::size_t t = 0;
  std::size_t x = 0;  // cut position
  double p = 1.0;
  double q = 0.0;
  double delta = 0.0;
  std::size_t nBound = 0;  // ceil(21 log p / log(1 - delta)); n exceeds it
  Instance pathId1;        // identities 1..n
  Instance pathId2;        // identities x+1..n, 1..x
  Instance cycle;          // identities 1..n
  Subpath s;               // [x-t, x+t+1], same positions in pathId1 and cycle
  std::vector<NodeIndex> sPrimeCycle;  // x+t+2..n, 1..x-t-1 as cycle positions
  Subpath sPrimePath2;                 // the same nodes as positions of pathId2
};

/// Structural setup for given n and t (requires n >= 4t + 4); x = floor(n/2).
TreeSetup tree_setup(std::size_t n, std::size_t t, double delta = 0.0);

/// delta = (p + q - 1) / 2, and the smallest n with n > ceil(21 log p / log(1-delta)),
/// t <= floor(n log(1-delta) / (21 log p)) and n >= 4t + 4.
TreeSetup thm2_setup(double p, double q, std::size_t t);

/// Radius-t views compared position by position: S in pathId1 against the
/// cycle, and S' in pathId2 against the cycle.
struct ViewEquality {
  bool s = false;
  bool sPrime = false;
  std::size_t compared = 0;
};

ViewEquality tree_view_equality(const TreeSetup& setup, std::size_t t);

struct TreeUnionDiagnostic {
  ProbabilityReport pathS;         // Pr[E(P, Id1, S)]
  ProbabilityReport cycleS;        // Pr[E(C, Id1, S)]
  ProbabilityReport pathSPrime;    // Pr[E(P, Id2, S')]
  ProbabilityReport cycleSPrime;   // Pr[E(C, Id1, S')]
  ProbabilityReport cycleAll;      // Pr[E(C, Id1, V)]
  bool claimQ1Equal = false;       // per-trial outputs on S agree between P(Id1) and C
  bool claimQ2Equal = false;       // per-trial outputs on S' agree between P(Id2) and C
  bool sSecureOnPath = false;      // lower bound of pathS >= 1 - delta
  double unionBound = 0.0;         // (1 - pathSPrime) + (1 - pathS)
  double measuredRejection = 0.0;  // 1 - cycleAll
  bool boundRespected = false;
  double claimedQ = 0.0;
  bool claimedQPlausible = false;  // claimedQ <= optimistic measured rejection
  bool claimedQWithinBound = false;
  bool deltaTransfer = true;       // S secure on the path => secure on the cycle
};

/// Paired-seed Monte Carlo: the same master seed drives all three instances,
/// so nodes with identical views flip identical coins.
TreeUnionDiagnostic thm2_union_check(const TreeSetup& setup, const Decider& d,
                                     std::uint64_t trials, std::uint64_t seed);

}  // namespace locdec
