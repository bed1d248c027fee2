#include <doctest.h>

#include <cmath>

#include "locdec/deciders.hpp"
#include "locdec/derand.hpp"
#include "locdec/engine.hpp"
#include "../oracles.hpp"

using namespace locdec;

namespace {

/// Reads two hops although it declares one round.
class Overreacher final : public Decider {
 public:
  std::string name() const override { return "overreacher"; }
  std::size_t rounds() const override { return 1; }
  Guarantee declared() const override { return {1.0, 0.0}; }
  Verdict decide(const View& v, RandomStream&) const override {
    return v.input_at(2) == kOne ? Verdict::no : Verdict::yes;
  }
};

std::vector<Symbol> with_selected(std::size_t n, std::size_t s) {
  std::vector<Symbol> x(n, kZero);
  for (std::size_t i = 0; i < s; ++i) x[2 * i] = kOne;
  return x;
}

}  // namespace

TEST_CASE("run examples") {
  const auto inst = make_path(symbols_from_bits({1, 0, 1, 1, 0}));
  const auto yes = run(*always_yes_decider(), inst, {3, 4});
  CHECK(yes.accepted());
  CHECK(yes.outputs.size() == 5);

  const auto none = make_path(std::vector<Symbol>(6, kZero));
  for (std::uint64_t s = 0; s < 20; ++s) CHECK(run(*amos_k_decider(2, 0.3), none, {s, s}).accepted());

  const auto D = algorithm_D(augment(amos_k_language(1)), 2);
  const auto marked = make_path(parse_symbols("⊗,0,1,1,0,⊗"));
  CHECK(run(*D, marked, {1, 0}) == run(*D, marked, {99, 12345}));

  CHECK_THROWS_AS(run(Overreacher{}, inst, {0, 0}), ContractViolation);
}

TEST_CASE("run is deterministic and local to each node's stream") {
  const auto d = neighbourhood_coin_decider(2);
  const auto inst = make_path(symbols_from_bits({1, 0, 1, 1, 0, 0, 1, 0}));
  for (std::uint64_t t = 0; t < 50; ++t) CHECK(run(*d, inst, {8, t}) == run(*d, inst, {8, t}));
}

TEST_CASE("exact_all_yes examples") {
  const auto d = amos_k_decider(2, 0.64);
  const auto two = make_path(with_selected(9, 2));
  const auto three = make_path(with_selected(9, 3));
  const auto zero = make_path(with_selected(9, 0));
  CHECK(exact_all_yes(*d, two, NodeSet::all(9)).value == doctest::Approx(0.64).epsilon(1e-12));
  CHECK(exact_all_yes(*d, three, NodeSet::all(9)).value == doctest::Approx(0.512).epsilon(1e-12));
  const auto r0 = exact_all_yes(*d, zero, NodeSet::all(9));
  CHECK(r0.value == 1.0);
  CHECK(r0.kind == ReportKind::exact);
  CHECK_FALSE(r0.trials.has_value());
  CHECK_THROWS_AS(exact_all_yes(*endpoint_witness_decider(1, 0.5), zero, NodeSet::all(9)),
                  std::invalid_argument);
}

TEST_CASE("exact rational products") {
  const auto d = coin_decider(3, 4);
  const auto inst = make_path(std::vector<Symbol>(3, kZero));
  const auto r = exact_all_yes_rational(*d, inst, NodeSet::all(3));
  REQUIRE(r.has_value());
  CHECK(*r == Rational(27, 64));
  CHECK(exact_all_yes(*d, inst, NodeSet::all(3)).rational == std::optional<std::string>("27/64"));
  CHECK_FALSE(exact_all_yes_rational(*amos_k_decider(2, 0.5), make_path(symbols_from_bits({1})),
                                     NodeSet::all(1)));
}

TEST_CASE("property: exact products equal the outcome-pattern oracle") {
  oracle::Gen g(21);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = g.between(1, 10);
    const std::size_t k = g.between(1, 4);
    const double p = 0.05 + 0.95 * g.unit();
    const auto x = g.bits(n);
    const auto d = amos_k_decider(k, p);
    std::vector<double> probs;
    for (Symbol s : x) probs.push_back(s == kOne ? std::pow(p, 1.0 / static_cast<double>(k)) : 1.0);
    const auto got = exact_all_yes(*d, make_path(x), NodeSet::all(n)).value;
    CHECK(got == doctest::Approx(oracle::all_yes_by_patterns(probs)).epsilon(1e-12));
  }
}

TEST_CASE("estimate_all_yes examples") {
  const auto inst3 = make_path(std::vector<Symbol>(3, kZero));
  const auto est = estimate_all_yes(*coin_decider(0.9), inst3, NodeSet::all(3), 100'000, 1);
  CHECK(std::abs(est.value - 0.729) <= 0.005);
  CHECK(est.lower() <= est.value);
  CHECK(est.value <= est.upper());
  CHECK(est.trials == std::optional<std::uint64_t>(100'000));

  const auto ay = estimate_all_yes(*always_yes_decider(), inst3, NodeSet::all(3), 1000, 2);
  CHECK(ay.value == 1.0);
  CHECK(ay.lower() == 1.0);
  CHECK(ay.upper() == 1.0);

  const auto one = make_path(symbols_from_bits({0, 1, 0}));
  const auto half = estimate_all_yes(*amos_k_decider(1, 0.5), one, NodeSet::all(3), 100'000, 3);
  CHECK(std::abs(half.value - 0.5) <= 0.01);

  CHECK_THROWS_AS(estimate_all_yes(*coin_decider(0.5), inst3, NodeSet::all(3), 0, 0),
                  std::invalid_argument);
}

TEST_CASE("estimates do not depend on the worker count") {
  const auto inst = make_path(symbols_from_bits({1, 0, 1, 1, 0, 1}));
  const auto d = neighbourhood_coin_decider(1);
  const auto a = estimate_all_yes(*d, inst, NodeSet::all(6), 20'000, 77, {1});
  const auto b = estimate_all_yes(*d, inst, NodeSet::all(6), 20'000, 77, {4});
  CHECK(a.value == b.value);
  CHECK(a.ciLow == b.ciLow);
  CHECK(a.ciHigh == b.ciHigh);
}

TEST_CASE("wilson interval matches the textbook form") {
  for (auto [s, n] : {std::pair<int, int>{0, 10}, {10, 10}, {729, 1000}, {1, 3}, {49'990, 100'000}}) {
    const auto iv = wilson_interval(s, n);
    const auto [lo, hi] = oracle::wilson(s, n, 2.5758293035489004);
    CHECK(iv.lo == doctest::Approx(std::max(0.0, lo)).epsilon(1e-12));
    CHECK(iv.hi == doctest::Approx(std::min(1.0, hi)).epsilon(1e-12));
    CHECK(iv.lo <= static_cast<double>(s) / n);
    CHECK(static_cast<double>(s) / n <= iv.hi);
  }
}

TEST_CASE("union_bound_check examples") {
  auto exact = [](double v, Subpath s) {
    ProbabilityReport r;
    r.value = v;
    r.nodes = NodeSet::range(s);
    return r;
  };
  std::vector<UnionBlock> blocks{{exact(0.9, {1, 4}), BlockRole::independent},
                                 {exact(0.95, {5, 6}), BlockRole::separator},
                                 {exact(0.9, {7, 10}), BlockRole::independent}};
  CHECK(union_bound_check(blocks, 10).bound == doctest::Approx(0.24).epsilon(1e-12));

  std::vector<UnionBlock> single{{exact(0.7, {1, 5}), BlockRole::independent}};
  CHECK(union_bound_check(single, 5).bound == doctest::Approx(0.3).epsilon(1e-12));

  std::vector<UnionBlock> sure{{exact(1.0, {1, 2}), BlockRole::independent},
                               {exact(1.0, {3, 3}), BlockRole::separator}};
  CHECK(union_bound_check(sure, 3).bound == 0.0);

  std::vector<UnionBlock> overlap{{exact(1.0, {1, 3}), BlockRole::independent},
                                  {exact(1.0, {3, 4}), BlockRole::separator}};
  CHECK_THROWS_AS(union_bound_check(overlap, 4), std::invalid_argument);
  std::vector<UnionBlock> gap{{exact(1.0, {1, 2}), BlockRole::independent}};
  CHECK_THROWS_AS(union_bound_check(gap, 4), std::invalid_argument);
}

TEST_CASE("union bound holds for a real decider on a path") {
  const auto d = amos_k_decider(1, 0.5);
  const auto inst = make_path(symbols_from_bits({1, 0, 0, 0, 0, 0, 1, 0}));
  std::vector<UnionBlock> blocks;
  blocks.push_back({exact_all_yes(*d, inst, NodeSet::range({1, 3})), BlockRole::independent});
  blocks.push_back({exact_all_yes(*d, inst, NodeSet::range({4, 5})), BlockRole::separator});
  blocks.push_back({exact_all_yes(*d, inst, NodeSet::range({6, 8})), BlockRole::independent});
  const auto full = exact_all_yes(*d, inst, NodeSet::all(8));
  const auto diag = union_bound_check(blocks, 8, full);
  CHECK(diag.respected == std::optional<bool>(true));
  CHECK(diag.bound == doctest::Approx(0.75));
}

TEST_CASE("property: separated node sets are independent") {
  // Two blocks at distance >= 2t+1 on a path see disjoint coins.
  const std::size_t t = 1;
  const auto d = neighbourhood_coin_decider(t);
  const auto inst = make_path(symbols_from_bits({1, 0, 1, 0, 0, 0, 0, 1, 1, 0}));
  const std::vector<NodeIndex> L{1, 2, 3}, R{7, 8, 9, 10};
  const std::uint64_t trials = 60'000;
  std::uint64_t l = 0, r = 0, both = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const auto o = run(*d, inst, {5, i});
    const bool a = o.all_yes_on(L), b = o.all_yes_on(R);
    l += a;
    r += b;
    both += a && b;
  }
  const double pl = static_cast<double>(l) / trials, pr = static_cast<double>(r) / trials;
  const auto iv = wilson_interval(both, trials);
  const double slack = 0.01;  // product of two estimates carries its own error
  CHECK(pl * pr >= iv.lo - slack);
  CHECK(pl * pr <= iv.hi + slack);
}

TEST_CASE("property: locality of all-yes probabilities") {
  oracle::Gen g(31);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 12;
    auto x = g.bits(n);
    const auto inst = make_path(x);
    const Subpath U(5, 7);
    // Zero rounds: exact equality after changing inputs outside U.
    auto y = x;
    for (std::size_t i = 0; i < n; ++i) {
      if (!U.contains(i + 1)) y[i] = Symbol{static_cast<std::uint8_t>(g.below(2))};
    }
    const auto d0 = amos_k_decider(2, 0.6);
    CHECK(exact_all_yes(*d0, inst, NodeSet::range(U)).value ==
          exact_all_yes(*d0, make_path(y), NodeSet::range(U)).value);

    // t rounds: paired seeds give identical outputs on U when only nodes
    // beyond distance t of U change.
    const std::size_t t = 2;
    auto z = x;
    for (std::size_t i = 0; i < n; ++i) {
      if (i + 1 + t < U.lo || i + 1 > U.hi + t) z[i] = Symbol{static_cast<std::uint8_t>(g.below(2))};
    }
    const auto dt = neighbourhood_coin_decider(t);
    const auto other = make_path(z);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto a = run(*dt, inst, {s, 0});
      const auto b = run(*dt, other, {s, 0});
      for (NodeIndex v = U.lo; v <= U.hi; ++v) CHECK(a.outputs[v - 1] == b.outputs[v - 1]);
    }
  }
}
