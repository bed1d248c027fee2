#include "locdec/io.hpp"

#include <charconv>
#include <set>
#include <sstream>

namespace locdec {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

class ArgReader {
 public:
  ArgReader(const Spec& spec) : spec_(spec) {}

  std::size_t count(const std::string& key) {
    const auto& v = take(key);
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
      throw SpecError(spec_.name + ": " + key + " must be a non-negative integer, got '" + v + "'");
    }
    return out;
  }

  double real(const std::string& key) {
    const auto& v = take(key);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
      throw SpecError(spec_.name + ": " + key + " must be a number, got '" + v + "'");
    }
    return out;
  }

  bool has(const std::string& key) const { return spec_.args.count(key) > 0; }

  void done() const {
    for (const auto& [k, v] : spec_.args) {
      if (!used_.count(k)) throw SpecError(spec_.name + ": unexpected parameter '" + k + "'");
    }
  }

 private:
  const std::string& take(const std::string& key) {
    auto it = spec_.args.find(key);
    if (it == spec_.args.end()) throw SpecError(spec_.name + ": missing parameter '" + key + "'");
    used_.insert(key);
    return it->second;
  }

  const Spec& spec_;
  std::set<std::string> used_;
};

template <typename Fn>
auto wrap_domain(const std::string& what, Fn&& fn) {
  try {
    return fn();
  } catch (const SpecError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SpecError(what + ": " + e.what());
  }
}

}  // namespace

Spec parse_spec(std::string_view text) {
  Spec spec;
  const auto colon = text.find(':');
  spec.name = trim(text.substr(0, colon));
  if (spec.name.empty()) throw SpecError("empty spec name in '" + std::string(text) + "'");
  if (colon == std::string_view::npos) return spec;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw SpecError("expected key=value in '" + std::string(text) + "'");
    }
    auto key = trim(item.substr(0, eq));
    auto value = trim(item.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw SpecError("empty key or value in '" + std::string(text) + "'");
    }
    if (!spec.args.emplace(key, value).second) {
      throw SpecError("parameter '" + key + "' given twice in '" + std::string(text) + "'");
    }
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
    if (rest.empty()) throw SpecError("trailing comma in '" + std::string(text) + "'");
  }
  return spec;
}

Language parse_language(std::string_view text) {
  const auto spec = parse_spec(text);
  ArgReader args(spec);
  return wrap_domain(spec.name, [&]() -> Language {
    Language out;
    if (spec.name == "amos") {
      out = amos_k_language(args.count("k"));
    } else if (spec.name == "amos-promise") {
      const auto a = args.count("a");
      out = amos_promise_language(a, args.count("b"));
    } else if (spec.name == "tree") {
      out = tree_language();
    } else if (spec.name == "no-adjacent") {
      out = no_adjacent_language();
    } else if (spec.name == "all") {
      out = all_language();
    } else {
      throw SpecError("unknown language '" + spec.name + "'");
    }
    args.done();
    return out;
  });
}

DeciderPtr parse_decider(std::string_view text) {
  const auto spec = parse_spec(text);
  ArgReader args(spec);
  return wrap_domain(spec.name, [&]() -> DeciderPtr {
    DeciderPtr out;
    if (spec.name == "amos") {
      const auto k = args.count("k");
      out = amos_k_decider(k, args.real("p"));
    } else if (spec.name == "amos-promise") {
      const auto a = args.count("a");
      const auto b = args.has("b") ? args.count("b") : 1;
      out = amos_promise_decider(a, args.real("p"), b);
    } else if (spec.name == "always-yes") {
      out = always_yes_decider();
    } else if (spec.name == "coin") {
      out = coin_decider(args.real("p"));
    } else if (spec.name == "endpoint-witness") {
      const auto t = args.count("t");
      out = endpoint_witness_decider(t, args.real("p"));
    } else if (spec.name == "neighbourhood-coin") {
      out = neighbourhood_coin_decider(args.count("t"));
    } else if (spec.name == "fixed-id-rejector") {
      out = fixed_id_rejector(args.count("id"));
    } else {
      throw SpecError("unknown decider '" + spec.name + "'");
    }
    args.done();
    return out;
  });
}

Json symbols_json(const std::vector<Symbol>& x) {
  Json arr = Json::array();
  for (Symbol s : x) arr.push_back(to_string(s));
  return arr;
}

Json to_json(const Instance& inst) {
  Json j;
  j["topology"] = std::string(to_string(inst.topology()));
  j["n"] = inst.size();
  j["x"] = symbols_json(inst.inputs());
  j["ids"] = inst.ids();
  return j;
}

Instance instance_from_json(const Json& j) {
  const auto topology = j.at("topology").get<std::string>();
  std::vector<Symbol> x;
  for (const auto& s : j.at("x")) x.push_back(parse_symbol(s.get<std::string>()));
  if (j.contains("n") && j.at("n").get<std::size_t>() != x.size()) {
    throw std::invalid_argument("instance field n disagrees with the length of x");
  }
  std::vector<NodeId> ids = j.contains("ids") ? j.at("ids").get<std::vector<NodeId>>()
                                              : default_ids(x.size());
  if (topology == "path") return make_path(std::move(x), std::move(ids));
  if (topology == "cycle") return make_cycle(std::move(x), std::move(ids));
  throw std::invalid_argument("unknown topology '" + topology + "'");
}

Json to_json(const Subpath& s) { return Json::array({s.lo, s.hi}); }

Json to_json(const NodeSet& nodes) {
  if (nodes.is_all()) return "all";
  if (auto r = nodes.as_range()) return to_json(*r);
  return Json{{"set", nodes.nodes()}};
}

Json to_json(const ProbabilityReport& r) {
  Json j;
  j["kind"] = r.kind == ReportKind::exact ? "exact" : "estimated";
  j["value"] = r.value;
  if (r.rational) j["rational"] = *r.rational;
  if (r.trials) j["trials"] = *r.trials;
  if (r.ciLow && r.ciHigh) j["ci"] = Json::array({*r.ciLow, *r.ciHigh});
  j["nodes"] = to_json(r.nodes);
  return j;
}

Json to_json(const SecureReport& r) {
  Json j;
  j["window"] = to_json(r.window);
  j["probability"] = to_json(r.probability);
  j["secure"] = r.isSecure;
  j["internal"] = r.internal;
  return j;
}

Json to_json(const ThresholdClass& c) { return c.to_string(); }

Json to_json(const PQMeasurement& m) {
  Json j;
  j["pHat"] = m.pHat ? Json(*m.pHat) : Json(nullptr);
  j["qHat"] = m.qHat ? Json(*m.qHat) : Json(nullptr);
  j["members"] = m.members;
  j["nonMembers"] = m.nonMembers;
  j["excluded"] = m.excluded;
  j["exact"] = m.exact;
  j["pWitness"] = m.pWitness ? to_json(*m.pWitness) : Json(nullptr);
  j["qWitness"] = m.qWitness ? to_json(*m.qWitness) : Json(nullptr);
  j["verdict"] = m.verdict;
  return j;
}

Json to_json(const SeparationPair& pair) {
  Json j;
  j["a"] = pair.a;
  j["b"] = pair.b;
  j["rhat"] = pair.rhat();
  j["rational"] = pair.rational;
  j["p"] = pair.p;
  j["epsilon"] = pair.epsilon;
  j["deltaBound"] = pair.deltaBound;
  j["delta"] = pair.delta;
  j["t"] = pair.t;
  j["ell"] = pair.ell;
  j["n"] = pair.illegal.size();
  j["leaders"] = pair.leaders;
  j["dropped"] = pair.dropped;
  Json segs = Json::array();
  for (const auto& s : pair.segments) segs.push_back(to_json(s));
  j["segments"] = segs;
  j["legal"] = to_json(pair.legal);
  j["illegal"] = to_json(pair.illegal);
  return j;
}

Json to_json(const SeparationBlocks& blocks) {
  Json j;
  Json windows = Json::array(), bl = Json::array();
  for (const auto& w : blocks.secureWindows) windows.push_back(to_json(w));
  for (const auto& b : blocks.blocks) bl.push_back(to_json(b));
  j["secureWindows"] = windows;
  j["allSecure"] = blocks.allSecure;
  j["blocks"] = bl;
  j["blockYes"] = blocks.blockYes;
  return j;
}

Json to_json(const RatioDiagnostic& d) {
  Json j;
  j["prLegalYes"] = d.prLegalYes;
  j["prIllegalYes"] = d.prIllegalYes;
  j["rho"] = d.rho;
  j["upperBound"] = d.upperBound;
  j["lowerBound"] = d.lowerBound;
  j["droppedProduct"] = d.droppedProduct;
  j["blockLowerBound"] = d.blockLowerBound;
  j["upperHolds"] = d.upperHolds;
  j["lowerHolds"] = d.lowerHolds;
  j["boundsInconsistent"] = d.boundsInconsistent;
  j["contradiction"] = d.contradiction;
  j["premiseHolds"] = d.premiseHolds;
  j["exact"] = d.exact;
  j["blocks"] = to_json(d.blocks);
  return j;
}

Json to_json(const TreeSetup& s) {
  Json j;
  j["n"] = s.n;
  j["t"] = s.t;
  j["x"] = s.x;
  j["p"] = s.p;
  j["q"] = s.q;
  j["delta"] = s.delta;
  j["nBound"] = s.nBound;
  j["ids2"] = s.pathId2.ids();
  j["S"] = to_json(s.s);
  j["SPrimeCycle"] = s.sPrimeCycle;
  j["SPrimePath2"] = to_json(s.sPrimePath2);
  return j;
}

Json to_json(const TreeUnionDiagnostic& d) {
  Json j;
  j["pathS"] = to_json(d.pathS);
  j["cycleS"] = to_json(d.cycleS);
  j["pathSPrime"] = to_json(d.pathSPrime);
  j["cycleSPrime"] = to_json(d.cycleSPrime);
  j["cycleAll"] = to_json(d.cycleAll);
  j["claimQ1Equal"] = d.claimQ1Equal;
  j["claimQ2Equal"] = d.claimQ2Equal;
  j["sSecureOnPath"] = d.sSecureOnPath;
  j["unionBound"] = d.unionBound;
  j["measuredRejection"] = d.measuredRejection;
  j["boundRespected"] = d.boundRespected;
  j["claimedQ"] = d.claimedQ;
  j["claimedQPlausible"] = d.claimedQPlausible;
  j["claimedQWithinBound"] = d.claimedQWithinBound;
  j["deltaTransfer"] = d.deltaTransfer;
  return j;
}

namespace {

Json marked_json(const MarkedPath& m) {
  return Json{{"x", symbols_json(m.x)}, {"middle", to_json(m.middle)}};
}

}  // namespace

Json to_json(const ClosureResult& r) {
  Json j;
  j["closed"] = r.closed;
  j["splicesChecked"] = r.splicesChecked;
  j["counterexampleCount"] = r.counterexampleCount;
  Json ce = Json::array();
  for (const auto& c : r.counterexamples) {
    ce.push_back(Json{{"left", marked_json(c.left)},
                      {"right", marked_json(c.right)},
                      {"spliced", marked_json(c.spliced)}});
  }
  j["counterexamples"] = ce;
  return j;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void flatten(const Json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object() || j.is_array()) {
    if (j.empty()) {
      out << csv_field(prefix) << ",\n";
      return;
    }
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      const std::string key = j.is_object() ? it.key() : std::to_string(i);
      flatten(*it, prefix.empty() ? key : prefix + "." + key, out);
    }
    return;
  }
  out << csv_field(prefix) << "," << csv_field(j.is_string() ? j.get<std::string>() : j.dump())
      << "\n";
}

}  // namespace

std::string flatten_csv(const Json& j) {
  std::ostringstream out;
  out << "key,value\n";
  flatten(j, "", out);
  return out.str();
}

}  // namespace locdec
