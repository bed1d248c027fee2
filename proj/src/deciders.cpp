#include "locdec/deciders.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace locdec {

namespace {

std::size_t count_symbol(const Instance& inst, Symbol s) {
  return static_cast<std::size_t>(std::count(inst.inputs().begin(), inst.inputs().end(), s));
}

bool over_alphabet(const Instance& inst, const Alphabet& alphabet) {
  return std::all_of(inst.inputs().begin(), inst.inputs().end(),
                     [&](Symbol s) { return alphabet.contains(s); });
}

void check_probability(double p, const char* what) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in (0,1], got " + std::to_string(p));
  }
}

}  // namespace

Language amos_k_language(std::size_t k) {
  if (k == 0) throw std::invalid_argument("AMOS-k needs k >= 1");
  Language L;
  L.name = "amos:k=" + std::to_string(k);
  L.alphabet = Alphabet::binary();
  L.member = [k, alphabet = L.alphabet](const Instance& inst) {
    return over_alphabet(inst, alphabet) && count_symbol(inst, kOne) <= k;
  };
  L.family = LanguageFamily::amos;
  L.k = k;
  return L;
}

Language tree_language() {
  Language L;
  L.name = "tree";
  L.alphabet = Alphabet::empty_input();
  L.member = [](const Instance& inst) {
    if (count_symbol(inst, kEmpty) != inst.size()) {
      throw std::invalid_argument("tree language is defined on empty inputs only");
    }
    return inst.topology() == Topology::path;
  };
  L.family = LanguageFamily::tree;
  return L;
}

Language amos_promise_language(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) throw std::invalid_argument("promise AMOS needs a, b >= 1");
  if (std::gcd(a, b) != 1) {
    throw std::invalid_argument("promise AMOS needs co-prime a and b, got " + std::to_string(a) +
                                "/" + std::to_string(b));
  }
  Language L;
  L.name = "amos-promise:a=" + std::to_string(a) + ",b=" + std::to_string(b);
  L.alphabet = Alphabet::binary();
  L.member = [a, alphabet = L.alphabet](const Instance& inst) {
    return over_alphabet(inst, alphabet) && count_symbol(inst, kOne) <= a;
  };
  L.promise = [a, b](const Instance& inst) {
    const auto s = count_symbol(inst, kOne);
    return s < a + 1 || s > a + b - 1;
  };
  L.family = LanguageFamily::amos_promise;
  L.k = a;
  L.b = b;
  return L;
}

Language no_adjacent_language() {
  Language L;
  L.name = "no-adjacent";
  L.alphabet = Alphabet::binary();
  L.member = [alphabet = L.alphabet](const Instance& inst) {
    if (!over_alphabet(inst, alphabet)) return false;
    const auto& x = inst.inputs();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      if (x[i] == kOne && x[i + 1] == kOne) return false;
    }
    if (inst.topology() == Topology::cycle && x.front() == kOne && x.back() == kOne) return false;
    return true;
  };
  L.family = LanguageFamily::no_adjacent;
  return L;
}

Language all_language(Alphabet alphabet) {
  Language L;
  L.name = "all";
  L.alphabet = alphabet;
  L.member = [alphabet](const Instance& inst) { return over_alphabet(inst, alphabet); };
  L.family = LanguageFamily::all;
  return L;
}

namespace {

/// Zero-round decider in which unselected nodes always accept and selected
/// nodes accept with a fixed probability.
class SelectedCoinDecider final : public Decider, public ZeroRoundIndependent {
 public:
  SelectedCoinDecider(std::string name, double selectedYes, Guarantee declared)
      : name_(std::move(name)), selectedYes_(selectedYes), declared_(declared) {}

  std::string name() const override { return name_; }
  std::size_t rounds() const override { return 0; }
  Guarantee declared() const override { return declared_; }
  const ZeroRoundIndependent* zero_round() const override { return this; }

  Verdict decide(const View& view, RandomStream& coins) const override {
    return coins.bernoulli(yes_probability(view)) ? Verdict::yes : Verdict::no;
  }

  double yes_probability(const View& local) const override {
    return local.own_input() == kOne ? selectedYes_ : 1.0;
  }

  std::optional<Rational> yes_probability_exact(const View& local) const override {
    const double p = yes_probability(local);
    if (p == 1.0) return Rational(1);
    return std::nullopt;
  }

 private:
  std::string name_;
  double selectedYes_;
  Guarantee declared_;
};

class CoinDecider final : public Decider, public ZeroRoundIndependent {
 public:
  CoinDecider(double p, std::optional<Rational> exact) : p_(p), exact_(std::move(exact)) {}

  std::string name() const override { return "coin:p=" + std::to_string(p_); }
  std::size_t rounds() const override { return 0; }
  Guarantee declared() const override { return {p_, 1.0 - p_}; }
  const ZeroRoundIndependent* zero_round() const override { return this; }

  Verdict decide(const View&, RandomStream& coins) const override {
    return coins.bernoulli(p_) ? Verdict::yes : Verdict::no;
  }
  double yes_probability(const View&) const override { return p_; }
  std::optional<Rational> yes_probability_exact(const View&) const override { return exact_; }

 private:
  double p_;
  std::optional<Rational> exact_;
};

class FixedIdRejector final : public Decider, public ZeroRoundIndependent {
 public:
  explicit FixedIdRejector(NodeId bad) : bad_(bad) {}

  std::string name() const override { return "reject-id:id=" + std::to_string(bad_); }
  std::size_t rounds() const override { return 0; }
  Guarantee declared() const override { return {1.0, 0.0}; }
  const ZeroRoundIndependent* zero_round() const override { return this; }

  Verdict decide(const View& view, RandomStream&) const override {
    return view.own_id() == bad_ ? Verdict::no : Verdict::yes;
  }
  double yes_probability(const View& local) const override {
    return local.own_id() == bad_ ? 0.0 : 1.0;
  }
  std::optional<Rational> yes_probability_exact(const View& local) const override {
    return Rational(local.own_id() == bad_ ? 0 : 1);
  }

 private:
  NodeId bad_;
};

class EndpointWitnessDecider final : public Decider {
 public:
  EndpointWitnessDecider(std::size_t t, double p) : t_(t), p_(p) {}

  std::string name() const override {
    return "endpoint-witness:t=" + std::to_string(t_) + ",p=" + std::to_string(p_);
  }
  std::size_t rounds() const override { return t_; }
  Guarantee declared() const override { return {p_, 0.0}; }

  Verdict decide(const View& view, RandomStream& coins) const override {
    if (view.closed) return Verdict::no;
    if (view.sees_endpoint()) return Verdict::yes;
    return coins.bernoulli(p_) ? Verdict::yes : Verdict::no;
  }

 private:
  std::size_t t_;
  double p_;
};

class NeighbourhoodCoinDecider final : public Decider {
 public:
  explicit NeighbourhoodCoinDecider(std::size_t t) : t_(t) {}

  std::string name() const override { return "neighbourhood-coin:t=" + std::to_string(t_); }
  std::size_t rounds() const override { return t_; }
  Guarantee declared() const override { return {0.0, 0.0}; }

  Verdict decide(const View& view, RandomStream& coins) const override {
    std::size_t selected = 0;
    std::uint64_t idMix = 0;
    const auto r = static_cast<std::ptrdiff_t>(view.radius);
    for (std::ptrdiff_t off = -r; off <= r; ++off) {
      if (auto s = view.input_at(off); s && *s == kOne) ++selected;
      if (auto id = view.id_at(off)) idMix ^= splitmix64(*id + static_cast<std::uint64_t>(off + r));
    }
    const double tilt = static_cast<double>(idMix % 7) / 70.0;  // in [0, 0.086]
    const double p = 1.0 / (1.0 + static_cast<double>(selected)) - tilt;
    return coins.bernoulli(std::max(p, 0.05)) ? Verdict::yes : Verdict::no;
  }

 private:
  std::size_t t_;
};

}  // namespace

DeciderPtr amos_k_decider(std::size_t k, double p) {
  if (k == 0) throw std::invalid_argument("AMOS-k decider needs k >= 1");
  check_probability(p, "p");
  const double kk = static_cast<double>(k);
  return std::make_shared<SelectedCoinDecider>(
      "amos:k=" + std::to_string(k) + ",p=" + std::to_string(p), std::pow(p, 1.0 / kk),
      Guarantee{p, 1.0 - std::pow(p, 1.0 + 1.0 / kk)});
}

DeciderPtr amos_promise_decider(std::size_t a, double p, std::size_t b) {
  if (a == 0 || b == 0) throw std::invalid_argument("promise decider needs a, b >= 1");
  check_probability(p, "p");
  const double aa = static_cast<double>(a);
  const double bb = static_cast<double>(b);
  return std::make_shared<SelectedCoinDecider>(
      "amos-promise:a=" + std::to_string(a) + ",b=" + std::to_string(b) + ",p=" + std::to_string(p),
      std::pow(p, 1.0 / aa), Guarantee{p, 1.0 - std::pow(p, (aa + bb) / aa)});
}

DeciderPtr always_yes_decider() {
  return std::make_shared<SelectedCoinDecider>("always-yes", 1.0, Guarantee{1.0, 0.0});
}

DeciderPtr coin_decider(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("coin probability outside [0,1]");
  return std::make_shared<CoinDecider>(p, std::nullopt);
}

DeciderPtr coin_decider(std::uint64_t num, std::uint64_t den) {
  if (den == 0 || num > den) throw std::invalid_argument("coin probability outside [0,1]");
  return std::make_shared<CoinDecider>(static_cast<double>(num) / static_cast<double>(den),
                                       Rational(num, den));
}

DeciderPtr fixed_id_rejector(NodeId badId) { return std::make_shared<FixedIdRejector>(badId); }

DeciderPtr endpoint_witness_decider(std::size_t t, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
  return std::make_shared<EndpointWitnessDecider>(t, p);
}

DeciderPtr neighbourhood_coin_decider(std::size_t t) {
  return std::make_shared<NeighbourhoodCoinDecider>(t);
}

std::size_t ThresholdClass::rank() const {
  switch (kind) {
    case Kind::finite:
      return k;
    case Kind::infinity:
      return kMaxThresholdK + 1;
    case Kind::none:
      break;
  }
  return kMaxThresholdK + 2;
}

std::string ThresholdClass::to_string() const {
  switch (kind) {
    case Kind::finite:
      return "B_" + std::to_string(k);
    case Kind::infinity:
      return "B_inf";
    case Kind::none:
      break;
  }
  return "none";
}

namespace {

bool above_threshold(double p, double q, double exponent) {
  return std::pow(p, exponent) + q - 1.0 > kThresholdMargin;
}

}  // namespace

ThresholdClass classify_threshold(double p, double q) {
  auto in_bk = [&](std::size_t k) {
    return above_threshold(p, q, 1.0 + 1.0 / static_cast<double>(k));
  };
  ThresholdClass c;
  if (in_bk(kMaxThresholdK)) {
    // p^(1+1/k) grows with k, so the predicate is monotone: binary search.
    std::size_t lo = 1;
    std::size_t hi = kMaxThresholdK;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (in_bk(mid)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    c.kind = ThresholdClass::Kind::finite;
    c.k = lo;
  } else if (above_threshold(p, q, 1.0)) {
    c.kind = ThresholdClass::Kind::infinity;
  }
  return c;
}

bool in_class_c(double p, double q, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("C_r needs r > 0");
  return above_threshold(p, q, 1.0 + 1.0 / r);
}

void for_each_instance(const InstanceFamily& family, std::size_t maxN,
                       const std::function<void(const Instance&)>& visit) {
  const auto symbols = family.alphabet.all_symbols();
  if (symbols.empty()) throw std::invalid_argument("family alphabet is empty");
  std::mt19937_64 shuffler(family.seed);

  for (std::size_t n = std::max<std::size_t>(family.minN, 1); n <= maxN; ++n) {
    std::vector<std::size_t> digits(n, 0);
    std::vector<Symbol> x(n, symbols.front());
    while (true) {
      for (int topo = 0; topo < 2; ++topo) {
        const bool cycle = topo == 1;
        if ((cycle && (!family.cycles || n < 3)) || (!cycle && !family.paths)) continue;
        const Instance base = cycle ? make_cycle(x) : make_path(x);
        visit(base);
        for (std::size_t k = 0; k < family.idPermutations; ++k) {
          auto ids = default_ids(n);
          std::shuffle(ids.begin(), ids.end(), shuffler);
          visit(base.with_ids(std::move(ids)));
        }
      }
      // Next input vector in mixed radix.
      std::size_t i = 0;
      while (i < n && ++digits[i] == symbols.size()) {
        digits[i] = 0;
        x[i] = symbols[0];
        ++i;
      }
      if (i == n) break;
      x[i] = symbols[digits[i]];
    }
  }
}

PQMeasurement verify_pq(const Decider& d, const Language& lang, const InstanceFamily& family,
                        std::size_t maxN, std::uint64_t trials, std::uint64_t seed) {
  constexpr double kTol = 1e-12;
  PQMeasurement m;
  m.exact = d.rounds() == 0 && d.zero_round() != nullptr;
  // Conservative side of each estimate: a guarantee is only refuted when even
  // the optimistic end of the interval misses it.
  double pOptimistic = 1.0;
  double qOptimistic = 1.0;

  std::uint64_t instanceCounter = 0;
  for_each_instance(family, maxN, [&](const Instance& inst) {
    ++instanceCounter;
    if (!lang.admissible(inst)) {
      ++m.excluded;
      return;
    }
    const auto all = NodeSet::all(inst.size());
    const auto report = m.exact
                            ? exact_all_yes(d, inst, all)
                            : estimate_all_yes(d, inst, all, trials, seed ^ splitmix64(instanceCounter));
    if (lang.member(inst)) {
      ++m.members;
      if (!m.pHat || report.value < *m.pHat) {
        m.pHat = report.value;
        m.pWitness = inst;
      }
      pOptimistic = std::min(pOptimistic, report.upper());
    } else {
      ++m.nonMembers;
      const double rejection = 1.0 - report.value;
      if (!m.qHat || rejection < *m.qHat) {
        m.qHat = rejection;
        m.qWitness = inst;
      }
      qOptimistic = std::min(qOptimistic, 1.0 - report.lower());
    }
  });

  const auto g = d.declared();
  const bool pOk = !m.pHat || (m.exact ? *m.pHat : pOptimistic) >= g.p - kTol;
  const bool qOk = !m.qHat || (m.exact ? *m.qHat : qOptimistic) >= g.q - kTol;
  m.verdict = pOk && qOk;
  return m;
}

}  // namespace locdec
