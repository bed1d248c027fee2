#include "locdec/derand.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>

#include "locdec/secure.hpp"

namespace locdec {

bool AugmentedLanguage::member(const std::vector<Symbol>& x) const {
  if (x.size() < 3 || x.front() != marker || x.back() != marker) return false;
  const std::vector<Symbol> inner(x.begin() + 1, x.end() - 1);
  if (std::find(inner.begin(), inner.end(), marker) != inner.end()) return false;
  const auto stripped = make_path(inner);
  return base.admissible(stripped) && base.member(stripped);
}

bool AugmentedLanguage::member(const Instance& inst) const {
  return inst.topology() == Topology::path && member(inst.inputs());
}

AugmentedLanguage augment(const Language& base) {
  if (base.alphabet.marker()) {
    throw std::invalid_argument("alphabet of " + base.name + " already contains the marker");
  }
  if (base.alphabet.contains(kMarker)) {
    throw std::invalid_argument("alphabet of " + base.name + " already uses the marker symbol");
  }
  AugmentedLanguage out;
  out.base = base;
  out.alphabet = base.alphabet.with_marker(kMarker);
  return out;
}

MarkedPath splice(const MarkedPath& left, const MarkedPath& right) {
  const auto& a = left.middle;
  const auto& b = right.middle;
  if (a.hi > left.x.size() || b.hi > right.x.size()) {
    throw std::out_of_range("marked middle extends past the path");
  }
  if (a.length() != b.length() ||
      !std::equal(left.x.begin() + static_cast<std::ptrdiff_t>(a.lo - 1),
                  left.x.begin() + static_cast<std::ptrdiff_t>(a.hi),
                  right.x.begin() + static_cast<std::ptrdiff_t>(b.lo - 1))) {
    throw std::invalid_argument("middles of the spliced paths differ");
  }
  MarkedPath out;
  out.x.assign(left.x.begin(), left.x.begin() + static_cast<std::ptrdiff_t>(a.hi));
  out.x.insert(out.x.end(), right.x.begin() + static_cast<std::ptrdiff_t>(b.hi), right.x.end());
  out.middle = a;
  return out;
}

ClosureResult triplet_closure_check(const Language& lang, std::size_t lambda, std::size_t maxN,
                                    std::size_t keep) {
  if (lambda == 0) throw std::invalid_argument("lambda must be at least 1");
  using Word = std::vector<Symbol>;
  struct Contexts {
    std::set<Word> lefts;
    std::set<Word> rights;
    std::map<Word, MarkedPath> leftSource, rightSource;
  };
  std::map<Word, Contexts> byMiddle;

  InstanceFamily family;
  family.alphabet = lang.alphabet;
  family.minN = lambda;
  for_each_instance(family, maxN, [&](const Instance& inst) {
    if (!lang.admissible(inst) || !lang.member(inst)) return;
    const auto& x = inst.inputs();
    for (std::size_t lo = 0; lo + lambda <= x.size(); ++lo) {
      const auto mb = x.begin() + static_cast<std::ptrdiff_t>(lo);
      const auto me = mb + static_cast<std::ptrdiff_t>(lambda);
      auto& ctx = byMiddle[Word(mb, me)];
      Word l(x.begin(), mb), r(me, x.end());
      const MarkedPath src{x, Subpath(lo + 1, lo + lambda)};
      if (ctx.lefts.insert(l).second) ctx.leftSource.emplace(l, src);
      if (ctx.rights.insert(r).second) ctx.rightSource.emplace(r, src);
    }
  });

  ClosureResult res;
  for (const auto& [middle, ctx] : byMiddle) {
    for (const auto& l : ctx.lefts) {
      for (const auto& r : ctx.rights) {
        Word joined = l;
        joined.insert(joined.end(), middle.begin(), middle.end());
        joined.insert(joined.end(), r.begin(), r.end());
        const auto inst = make_path(joined);
        if (!lang.admissible(inst)) continue;
        ++res.splicesChecked;
        if (lang.member(inst)) continue;
        ++res.counterexampleCount;
        if (res.counterexamples.size() < keep) {
          const auto& left = ctx.leftSource.at(l);
          const auto& right = ctx.rightSource.at(r);
          res.counterexamples.push_back({left, right, splice(left, right)});
        }
      }
    }
  }
  res.closed = res.counterexampleCount == 0;
  return res;
}

std::size_t default_extension_cap(std::size_t configLength, std::size_t radius) {
  return configLength + 2 * radius + 2;
}

namespace {

// Every padding word that can sit beyond one end of the config in a member of
// L': empty, or a marker at the far end followed by base symbols.
std::vector<std::vector<Symbol>> pads(const AugmentedLanguage& lang, std::size_t maxLen,
                                      bool markerFirst) {
  std::vector<std::vector<Symbol>> out{{}};
  if (maxLen == 0) return out;
  std::vector<std::vector<Symbol>> layer{{}};
  for (std::size_t fill = 0; fill + 1 <= maxLen; ++fill) {
    for (const auto& w : layer) {
      auto p = w;
      if (markerFirst) p.insert(p.begin(), lang.marker); else p.push_back(lang.marker);
      out.push_back(std::move(p));
    }
    if (fill + 2 > maxLen) break;
    std::vector<std::vector<Symbol>> next;
    for (const auto& w : layer) {
      for (Symbol s : lang.base.alphabet.symbols()) {
        auto p = w;
        p.push_back(s);
        next.push_back(std::move(p));
      }
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace

bool is_extendable_brute(const std::vector<Symbol>& config, const AugmentedLanguage& lang,
                         std::size_t cap) {
  if (cap < config.size()) {
    throw std::invalid_argument("extension cap " + std::to_string(cap) +
                                " is shorter than the config (" + std::to_string(config.size()) +
                                ")");
  }
  const std::size_t room = cap - config.size();
  const auto lefts = pads(lang, room, true);
  const auto rights = pads(lang, room, false);
  for (const auto& l : lefts) {
    for (const auto& r : rights) {
      if (l.size() + r.size() > room) continue;
      std::vector<Symbol> full = l;
      full.insert(full.end(), config.begin(), config.end());
      full.insert(full.end(), r.begin(), r.end());
      if (lang.member(full)) return true;
    }
  }
  return false;
}

std::optional<bool> is_extendable_analytic(const std::vector<Symbol>& config,
                                           const AugmentedLanguage& lang) {
  const auto family = lang.base.family;
  if (family != LanguageFamily::amos && family != LanguageFamily::no_adjacent) return std::nullopt;
  if (config.empty()) return true;
  const Symbol m = lang.marker;
  const std::size_t len = config.size();
  for (std::size_t i = 0; i < len; ++i) {
    const Symbol s = config[i];
    if (s == m) {
      if (i != 0 && i + 1 != len) return false;
    } else if (!lang.base.alphabet.contains(s)) {
      return false;
    }
  }
  if (len == 1 && config[0] == m) return true;
  const bool closedBoth = config.front() == m && config.back() == m;
  if (closedBoth) return lang.member(config);

  const auto b = config.begin() + (config.front() == m ? 1 : 0);
  const auto e = config.end() - (config.back() == m ? 1 : 0);
  if (family == LanguageFamily::amos) {
    return static_cast<std::size_t>(std::count(b, e, kOne)) <= lang.base.k;
  }
  for (auto it = b; it != e && it + 1 != e; ++it) {
    if (*it == kOne && *(it + 1) == kOne) return false;
  }
  return true;
}

ExtendabilityOracle::ExtendabilityOracle(AugmentedLanguage lang, OracleKind kind,
                                         std::optional<std::size_t> cap)
    : lang_(std::move(lang)), kind_(kind), cap_(cap) {}

bool ExtendabilityOracle::operator()(const std::vector<Symbol>& config, std::size_t radius) const {
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(config); it != memo_.end()) return it->second;
  }
  std::optional<bool> answer;
  if (kind_ == OracleKind::analytic) answer = is_extendable_analytic(config, lang_);
  if (!answer) {
    answer = is_extendable_brute(config, lang_,
                                 cap_.value_or(default_extension_cap(config.size(), radius)));
  }
  std::unique_lock lock(mutex_);
  memo_.emplace(config, *answer);
  return *answer;
}

std::size_t ExtendabilityOracle::cache_size() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

namespace {

class AlgorithmD final : public Decider {
 public:
  AlgorithmD(std::shared_ptr<ExtendabilityOracle> oracle, std::size_t radius)
      : oracle_(std::move(oracle)), radius_(radius) {}

  std::string name() const override {
    return "algorithm-D:" + oracle_->language().name() + ",r=" + std::to_string(radius_);
  }
  std::size_t rounds() const override { return radius_; }
  Guarantee declared() const override { return {1.0, 1.0}; }

  Verdict decide(const View& view, RandomStream& /*coins*/) const override {
    if (view.own_input() == oracle_->language().marker) {
      return view.own_degree() <= 1 ? Verdict::yes : Verdict::no;
    }
    return (*oracle_)(view.inputs, radius_) ? Verdict::yes : Verdict::no;
  }

 private:
  std::shared_ptr<ExtendabilityOracle> oracle_;
  std::size_t radius_;
};

}  // namespace

DeciderPtr algorithm_D(const AugmentedLanguage& lang, std::size_t radius, OracleKind kind,
                       std::optional<std::size_t> cap) {
  if (radius == 0) throw std::invalid_argument("algorithm D needs radius >= 1");
  return std::make_shared<AlgorithmD>(std::make_shared<ExtendabilityOracle>(lang, kind, cap),
                                      radius);
}

std::size_t default_derand_radius(double p, double q, std::size_t t) {
  const double margin = p * p + q - 1.0;
  if (!(margin > 0.0)) {
    throw std::invalid_argument("p^2 + q must exceed 1 to derive a radius");
  }
  const auto len = security_length(SecureParams::standard(margin / 2.0, t, p));
  return std::max<std::size_t>(len.nodes, 1);
}

}  // namespace locdec
