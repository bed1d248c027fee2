#include <doctest.h>

#include <cmath>

#include "locdec/deciders.hpp"
#include "../oracles.hpp"

using namespace locdec;

TEST_CASE("amos_k_language examples") {
  const auto L1 = amos_k_language(1);
  CHECK(L1.member(make_path(symbols_from_bits({0, 1, 0}))));
  CHECK_FALSE(L1.member(make_path(symbols_from_bits({1, 0, 1}))));
  CHECK(amos_k_language(3).member(make_path(symbols_from_bits({1, 1, 1}))));
  CHECK(L1.name == "amos:k=1");
}

TEST_CASE("tree_language examples") {
  const auto T = tree_language();
  CHECK(T.member(make_path(std::vector<Symbol>(9, kEmpty))));
  CHECK_FALSE(T.member(make_cycle(std::vector<Symbol>(9, kEmpty))));
  CHECK(T.member(make_path(std::vector<Symbol>(1, kEmpty))));
  CHECK_THROWS_AS(T.member(make_path(symbols_from_bits({0, 1}))), std::invalid_argument);
}

TEST_CASE("amos_promise_language examples") {
  const auto L = amos_promise_language(2, 3);
  const auto two = make_path(symbols_from_bits({1, 0, 1, 0, 0}));
  const auto three = make_path(symbols_from_bits({1, 1, 1, 0, 0}));
  const auto five = make_path(symbols_from_bits({1, 1, 1, 1, 1}));
  CHECK(L.member(two));
  CHECK(L.admissible(two));
  CHECK_FALSE(L.admissible(three));
  CHECK_FALSE(L.admissible(make_path(symbols_from_bits({1, 1, 1, 1, 0}))));
  CHECK(L.admissible(five));
  CHECK_FALSE(L.member(five));
  CHECK_THROWS_AS(amos_promise_language(2, 4), std::invalid_argument);
}

TEST_CASE("no_adjacent_language") {
  const auto L = no_adjacent_language();
  CHECK(L.member(make_path(symbols_from_bits({1, 0, 1, 0, 1}))));
  CHECK_FALSE(L.member(make_path(symbols_from_bits({0, 1, 1, 0}))));
  CHECK_FALSE(L.member(make_cycle(symbols_from_bits({1, 0, 0, 1}))));
  CHECK(L.member(make_path(symbols_from_bits({1, 0, 0, 1}))));
}

TEST_CASE("amos_k_decider examples") {
  const auto d = amos_k_decider(2, 0.64);
  const auto* z = d->zero_round();
  REQUIRE(z != nullptr);
  const auto sel = ball(make_path(symbols_from_bits({1})), 1, 0);
  CHECK(z->yes_probability(sel) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(d->declared().p == 0.64);
  CHECK(d->declared().q == doctest::Approx(0.488).epsilon(1e-12));

  const auto det = amos_k_decider(1, 1.0);
  CHECK(det->declared().p == 1.0);
  CHECK(det->declared().q == 0.0);
  const auto all = make_path(symbols_from_bits({1, 1, 1}));
  for (std::uint64_t s = 0; s < 10; ++s) CHECK(run(*det, all, {s, 0}).accepted());

  const auto three = make_path(symbols_from_bits({1, 0, 1, 0, 1}));
  CHECK(1.0 - exact_all_yes(*d, three, NodeSet::all(5)).value ==
        doctest::Approx(0.488).epsilon(1e-12));
  CHECK_THROWS_AS(amos_k_decider(2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(amos_k_decider(2, 1.5), std::invalid_argument);
}

TEST_CASE("amos_promise_decider examples") {
  const auto d = amos_promise_decider(2, 0.5, 3);
  const auto two = make_path(symbols_from_bits({1, 0, 1}));
  const auto five = make_path(symbols_from_bits({1, 1, 1, 1, 1}));
  const auto zero = make_path(symbols_from_bits({0, 0}));
  CHECK(exact_all_yes(*d, two, NodeSet::all(3)).value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(exact_all_yes(*d, five, NodeSet::all(5)).value ==
        doctest::Approx(std::pow(0.5, 2.5)).epsilon(1e-12));
  CHECK(1.0 - exact_all_yes(*d, five, NodeSet::all(5)).value ==
        doctest::Approx(0.82322).epsilon(1e-5));
  CHECK(exact_all_yes(*d, zero, NodeSet::all(2)).value == 1.0);
  CHECK(d->declared().q == doctest::Approx(1.0 - std::pow(0.5, 2.5)).epsilon(1e-12));
  CHECK_THROWS_AS(amos_promise_decider(2, -0.1), std::invalid_argument);
}

TEST_CASE("always_yes_decider examples") {
  const auto d = always_yes_decider();
  const auto inst = make_cycle(symbols_from_bits({1, 1, 0, 1}));
  CHECK(run(*d, inst, {1, 2}).accepted());
  CHECK(exact_all_yes(*d, inst, NodeSet::of({1, 3})).value == 1.0);
  CHECK(classify_threshold(1.0, 1e-300).kind == ThresholdClass::Kind::none);
  CHECK(classify_threshold(d->declared().p, d->declared().q).kind == ThresholdClass::Kind::none);
}

TEST_CASE("classify_threshold examples") {
  const auto a = classify_threshold(0.9, 0.2);
  CHECK(a.kind == ThresholdClass::Kind::finite);
  CHECK(a.k == 1);
  const auto b = classify_threshold(0.6, 0.5);
  CHECK(b.k == 3);
  CHECK(b.to_string() == "B_3");
  CHECK(classify_threshold(0.5, 0.5).kind == ThresholdClass::Kind::none);
  CHECK(classify_threshold(0.5, 0.5).to_string() == "none");
  // Tiny excess over p + q = 1 is only reached for very large k.
  CHECK(classify_threshold(0.5, 0.5 + 1e-9).kind == ThresholdClass::Kind::infinity);
}

TEST_CASE("property: classify_threshold agrees with a linear scan") {
  oracle::Gen g(41);
  for (int rep = 0; rep < 500; ++rep) {
    const double p = 0.01 + 0.99 * g.unit();
    const double q = 0.01 + 0.99 * g.unit();
    const auto c = classify_threshold(p, q);
    const auto ref = oracle::smallest_k(p, q, 100000);
    if (ref > 0) {
      CHECK(c.kind == ThresholdClass::Kind::finite);
      CHECK(static_cast<long long>(c.k) == ref);
    } else if (ref == -1) {
      CHECK(c.kind == ThresholdClass::Kind::none);
    } else {
      CHECK(c.kind != ThresholdClass::Kind::none);
      if (c.kind == ThresholdClass::Kind::finite) CHECK(c.k > 100000);
    }
  }
}

TEST_CASE("property: classify_threshold is monotone in p and q") {
  oracle::Gen g(42);
  for (int rep = 0; rep < 500; ++rep) {
    const double p = 0.01 + 0.98 * g.unit();
    const double q = 0.01 + 0.98 * g.unit();
    const double dp = (1.0 - p) * g.unit();
    const double dq = (1.0 - q) * g.unit();
    const auto base = classify_threshold(p, q);
    CHECK(classify_threshold(p + dp, q).rank() <= base.rank());
    CHECK(classify_threshold(p, q + dq).rank() <= base.rank());
  }
}

TEST_CASE("in_class_c") {
  CHECK(in_class_c(0.9, 0.2, 1.0));
  CHECK_FALSE(in_class_c(0.5, 0.5, 1.0));
  CHECK(in_class_c(0.5, 0.9, 2.0 / 3.0));
}

TEST_CASE("verify_pq examples") {
  InstanceFamily fam;
  const auto m = verify_pq(*amos_k_decider(2, 0.64), amos_k_language(2), fam, 8);
  REQUIRE(m.pHat);
  REQUIRE(m.qHat);
  CHECK(*m.pHat == doctest::Approx(0.64).epsilon(1e-12));
  CHECK(*m.qHat == doctest::Approx(0.488).epsilon(1e-12));
  CHECK(m.exact);
  CHECK(m.verdict);
  CHECK(m.qWitness->selected_count() == 3);

  const auto ay = verify_pq(*always_yes_decider(), amos_k_language(1), fam, 4);
  CHECK(*ay.pHat == 1.0);
  CHECK(*ay.qHat == 0.0);

  const auto pr = verify_pq(*amos_promise_decider(2, 0.5, 3), amos_promise_language(2, 3), fam, 8);
  CHECK(*pr.qHat == doctest::Approx(1.0 - std::pow(0.5, 2.5)).epsilon(1e-12));
  CHECK(pr.excluded > 0);
  CHECK(pr.verdict);
}

TEST_CASE("verify_pq reports one-sided families and false claims") {
  InstanceFamily fam;
  fam.minN = 1;
  const auto allLang = all_language();
  const auto m = verify_pq(*always_yes_decider(), allLang, fam, 3);
  CHECK(m.pHat.has_value());
  CHECK_FALSE(m.qHat.has_value());
  CHECK(m.nonMembers == 0);

  const auto bad = verify_pq(*fixed_id_rejector(1), amos_k_language(1), fam, 3);
  CHECK_FALSE(bad.verdict);
  CHECK(*bad.pHat == 0.0);
}

TEST_CASE("verify_pq never evaluates instances outside the promise") {
  Language L = amos_promise_language(2, 3);
  std::size_t seenOutside = 0;
  auto inner = L.member;
  L.member = [&, inner](const Instance& inst) {
    const auto s = inst.selected_count();
    if (s >= 3 && s <= 4) ++seenOutside;
    return inner(inst);
  };
  InstanceFamily fam;
  verify_pq(*amos_promise_decider(2, 0.5, 3), L, fam, 7);
  CHECK(seenOutside == 0);
}

TEST_CASE("verify_pq with Monte Carlo and id permutations") {
  // Interior path nodes that see no endpoint flip a 0.8 coin: n = 6 has two.
  // On cycles every node flips, worst at n = 3.
  const InstanceFamily fam{Alphabet::empty_input(), true, true, 3, 2, 0};
  const auto m = verify_pq(*endpoint_witness_decider(1, 0.8), tree_language(), fam, 6, 20'000, 1);
  CHECK_FALSE(m.exact);
  REQUIRE(m.pHat);
  REQUIRE(m.qHat);
  CHECK(std::abs(*m.pHat - 0.64) < 0.02);
  CHECK(std::abs(*m.qHat - (1.0 - 0.512)) < 0.02);
  CHECK(m.members == 4 * 3);
  CHECK(m.nonMembers == 4 * 3);
}
