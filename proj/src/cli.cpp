#include "locdec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

namespace locdec::cli {

namespace {

Json guarantee_json(const Guarantee& g) { return Json{{"p", g.p}, {"q", g.q}}; }

std::pair<double, double> parse_interval(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument("expected r,r' but got '" + text + "'");
  }
  std::size_t used = 0;
  const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
  const double r = std::stod(a, &used);
  if (used != a.size()) throw std::invalid_argument("bad number '" + a + "'");
  const double r2 = std::stod(b, &used);
  if (used != b.size()) throw std::invalid_argument("bad number '" + b + "'");
  return {r, r2};
}

Subpath parse_region(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("expected lo:hi, got '" + text + "'");
  std::size_t used = 0;
  const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
  const auto lo = std::stoull(a, &used);
  if (used != a.size()) throw std::invalid_argument("bad region start '" + a + "'");
  const auto hi = std::stoull(b, &used);
  if (used != b.size()) throw std::invalid_argument("bad region end '" + b + "'");
  return Subpath(lo, hi);
}

std::string fmt_real(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

SeparationPair build_separation(const std::optional<std::size_t>& k,
                                const std::optional<std::pair<double, double>>& rational,
                                double p, double eps, std::size_t t, const Decider* d) {
  if (k.has_value() == rational.has_value()) {
    throw std::invalid_argument("give exactly one of --k and --rational");
  }
  if (k) return thm1_instances(*k, p, eps, t, d);
  return thm4_instances(rational->first, rational->second, p, eps, t, d);
}

std::string default_separation_decider(const std::optional<std::size_t>& k,
                                       const std::optional<std::pair<double, double>>& rational,
                                       double p) {
  if (k) {
    if (*k == 0) throw std::invalid_argument("separation needs k >= 1");
    return "amos:k=" + std::to_string(*k) + ",p=" + fmt_real(p);
  }
  if (!rational) throw std::invalid_argument("give exactly one of --k and --rational");
  const auto [a, b] = simplest_rational(rational->first, rational->second);
  return "amos-promise:a=" + std::to_string(a) + ",b=" + std::to_string(b) + ",p=" + fmt_real(p);
}

}  // namespace

CommandResult cmd_amos_verify(const AmosVerifyConfig& cfg) {
  std::string langSpec, deciderSpec;
  if (cfg.language) {
    langSpec = *cfg.language;
  } else {
    if (!cfg.k) throw std::invalid_argument("amos-verify needs --k or --language");
    langSpec = "amos:k=" + std::to_string(*cfg.k);
  }
  if (cfg.decider) {
    deciderSpec = *cfg.decider;
  } else {
    if (!cfg.k || !cfg.p) throw std::invalid_argument("amos-verify needs --k and --p or --decider");
    deciderSpec = "amos:k=" + std::to_string(*cfg.k) + ",p=" + fmt_real(*cfg.p);
  }
  const auto lang = parse_language(langSpec);
  const auto d = parse_decider(deciderSpec);

  InstanceFamily fam;
  fam.alphabet = lang.alphabet;
  fam.cycles = cfg.cycles;
  fam.idPermutations = cfg.idPermutations;
  fam.seed = cfg.seed;
  const auto m = verify_pq(*d, lang, fam, cfg.maxN, cfg.trials, cfg.seed);

  CommandResult res;
  res.verdict = m.verdict;
  Json& j = res.report;
  j["command"] = "amos-verify";
  j["language"] = lang.name;
  j["decider"] = d->name();
  j["maxN"] = cfg.maxN;
  j["cycles"] = cfg.cycles;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["declared"] = guarantee_json(d->declared());
  j["declaredClass"] = to_json(classify_threshold(d->declared().p, d->declared().q));
  j["measured"] = to_json(m);
  j["class"] = (m.pHat && m.qHat) ? to_json(classify_threshold(*m.pHat, *m.qHat)) : Json(nullptr);
  j["verdict"] = m.verdict;
  return res;
}

CommandResult cmd_separation(const SeparationConfig& cfg) {
  const auto deciderSpec = cfg.decider.value_or(default_separation_decider(cfg.k, cfg.rational, cfg.p));
  const auto d = parse_decider(deciderSpec);
  const auto pair = build_separation(cfg.k, cfg.rational, cfg.p, cfg.eps, cfg.t, d.get());
  const auto diag = ratio_check(pair, *d, cfg.trials, cfg.seed);

  CommandResult res;
  Json& j = res.report;
  j["command"] = "separation";
  j["decider"] = d->name();
  j["declared"] = guarantee_json(d->declared());
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["pair"] = to_json(pair);
  j["diagnostic"] = to_json(diag);
  j["contradiction"] = diag.contradiction;
  return res;
}

CommandResult cmd_secure_scan(const SecureScanConfig& cfg) {
  const int sources = static_cast<int>(cfg.input.has_value()) +
                      static_cast<int>(cfg.instanceFile.has_value()) +
                      static_cast<int>(cfg.k.has_value() || cfg.rational.has_value());
  if (sources != 1) {
    throw std::invalid_argument("give exactly one of --input, --instance, --k/--rational");
  }
  std::optional<SeparationPair> pair;
  std::optional<Instance> inst;
  std::string deciderSpec;
  if (cfg.input || cfg.instanceFile) {
    if (!cfg.decider) throw std::invalid_argument("secure-scan on a given instance needs --decider");
    deciderSpec = *cfg.decider;
    if (cfg.input) {
      inst = make_path(parse_symbols(*cfg.input));
    } else {
      std::ifstream f(*cfg.instanceFile);
      if (!f) throw std::invalid_argument("cannot open instance file " + *cfg.instanceFile);
      inst = instance_from_json(Json::parse(f));
    }
  } else {
    deciderSpec = cfg.decider.value_or(default_separation_decider(cfg.k, cfg.rational, cfg.p));
  }
  const auto d = parse_decider(deciderSpec);
  if (!inst) {
    pair = build_separation(cfg.k, cfg.rational, cfg.p, cfg.eps, cfg.t, d.get());
    inst = pair->illegal;
  }
  double delta = 0.0;
  if (cfg.delta) {
    delta = *cfg.delta;
  } else if (pair) {
    delta = pair->delta;
  } else {
    throw std::invalid_argument("secure-scan on a given instance needs --delta");
  }
  SecureParams params{delta, cfg.lambda.value_or(2 * cfg.t + 1), cfg.t, cfg.p};

  std::vector<Subpath> regions;
  if (cfg.region) {
    regions.push_back(*cfg.region);
  } else if (pair) {
    regions = pair->segments;
  } else {
    regions.emplace_back(1, inst->size());
  }

  CommandResult res;
  Json& j = res.report;
  j["command"] = "secure-scan";
  j["decider"] = d->name();
  j["delta"] = params.delta;
  j["lambda"] = params.lambda;
  j["t"] = params.t;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["instance"] = to_json(*inst);
  Json scans = Json::array();
  for (const auto& region : regions) {
    const auto reports = scan_secure(*d, *inst, params, region, cfg.mode, cfg.trials, cfg.seed);
    Json scan;
    scan["region"] = to_json(region);
    auto it = std::find_if(reports.begin(), reports.end(), [](const auto& r) { return r.isSecure; });
    scan["witness"] = it == reports.end() ? Json(nullptr) : to_json(it->window);
    res.verdict = res.verdict && it != reports.end();
    Json windows = Json::array();
    for (const auto& r : reports) windows.push_back(to_json(r));
    scan["windows"] = windows;
    scans.push_back(scan);
  }
  j["scans"] = scans;
  j["allWitnessed"] = res.verdict;
  return res;
}

CommandResult cmd_tree_cycle(const TreeCycleConfig& cfg) {
  TreeSetup setup;
  if (cfg.n) {
    if (!(cfg.p + cfg.q > 1.0)) throw std::invalid_argument("p + q must exceed 1");
    setup = tree_setup(*cfg.n, cfg.t, (cfg.p + cfg.q - 1.0) / 2.0);
    setup.p = cfg.p;
    setup.q = cfg.q;
  } else {
    setup = thm2_setup(cfg.p, cfg.q, cfg.t);
  }
  const auto d = parse_decider(cfg.decider.value_or(
      "endpoint-witness:t=" + std::to_string(cfg.t) + ",p=" + fmt_real(cfg.p)));
  const auto eq = tree_view_equality(setup, cfg.t);
  const auto diag = thm2_union_check(setup, *d, cfg.trials, cfg.seed);

  CommandResult res;
  res.verdict = eq.s && eq.sPrime && diag.claimQ1Equal && diag.claimQ2Equal;
  Json& j = res.report;
  j["command"] = "tree-cycle";
  j["decider"] = d->name();
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["setup"] = to_json(setup);
  j["viewEquality"] = Json{{"S", eq.s}, {"SPrime", eq.sPrime}, {"compared", eq.compared}};
  j["union"] = to_json(diag);
  j["verdict"] = res.verdict;
  return res;
}

CommandResult cmd_derandomize(const DerandomizeConfig& cfg) {
  const auto lang = augment(parse_language(cfg.language));
  std::size_t radius = 0;
  if (cfg.radius) {
    radius = *cfg.radius;
  } else if (cfg.p && cfg.q) {
    radius = default_derand_radius(*cfg.p, *cfg.q, cfg.t);
  } else {
    throw std::invalid_argument("derandomize needs --radius or --p and --q");
  }
  const auto x = parse_symbols(cfg.input);
  for (Symbol s : x) {
    if (!lang.alphabet.contains(s)) {
      throw std::invalid_argument("symbol " + to_string(s) + " is outside the alphabet of " +
                                  lang.name());
    }
  }
  const auto inst = make_path(x);
  const auto d = algorithm_D(lang, radius, cfg.oracle, cfg.cap);
  const auto out = run(*d, inst, TrialSeed{0, 0});
  const bool member = lang.member(inst);

  CommandResult res;
  Json& j = res.report;
  j["command"] = "derandomize";
  j["language"] = lang.name();
  j["radius"] = radius;
  j["oracle"] = cfg.oracle == OracleKind::analytic ? "analytic" : "brute";
  j["input"] = symbols_json(x);
  Json verdicts = Json::array();
  for (Verdict v : out.outputs) verdicts.push_back(v == Verdict::yes ? "yes" : "no");
  j["verdicts"] = verdicts;
  j["result"] = out.accepted() ? "accept" : "reject";
  j["member"] = member;
  j["agreesWithMembership"] = out.accepted() == member;
  return res;
}

std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a file name");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!path) return args;

  std::ifstream f(*path);
  if (!f) throw CLI::ValidationError("--config", "cannot open " + *path);
  Json cfg;
  try {
    cfg = Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw CLI::ValidationError("--config", e.what());
  }
  if (!cfg.is_object()) throw CLI::ValidationError("--config", "config must be a JSON object");

  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") continue;
    const std::string flag = "--" + key;
    for (std::size_t i = 0; i < args.size();) {
      if (args[i] == flag) {
        const bool hasValue = i + 1 < args.size() && args[i + 1].rfind("--", 0) != 0;
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                   args.begin() + static_cast<std::ptrdiff_t>(i + (hasValue ? 2 : 1)));
      } else if (args[i].rfind(flag + "=", 0) == 0) {
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        ++i;
      }
    }
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_string()) {
      args.push_back(flag);
      args.push_back(value.get<std::string>());
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) {
        if (!joined.empty()) joined += ",";
        joined += v.is_string() ? v.get<std::string>() : v.dump();
      }
      args.push_back(flag);
      args.push_back(joined);
    } else if (value.is_number()) {
      args.push_back(flag);
      args.push_back(value.dump());
    } else {
      throw CLI::ValidationError("--config", "unsupported value for '" + key + "'");
    }
  }
  return args;
}

namespace {

EvalMode parse_mode(const std::string& s) {
  if (s == "auto") return EvalMode::automatic;
  if (s == "exact") return EvalMode::exact;
  if (s == "mc") return EvalMode::monte_carlo;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Randomized distributed decision lab", "locdec"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::uint64_t trials = 10'000;
  std::optional<std::string> outputPath;
  bool csv = false;
  app.add_option("--seed", seed, "Master seed")->envname("LOCDEC_SEED");
  app.add_option("--trials", trials, "Monte Carlo trials per estimate")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", outputPath, "Write the report to this file");
  app.add_flag("--csv", csv, "Emit key,value CSV instead of JSON");
  app.add_option("--config", "JSON file whose entries override flags");

  AmosVerifyConfig av;
  auto* amos = app.add_subcommand("amos-verify", "Measure (p,q) of a decider exhaustively");
  amos->add_option("--k", av.k);
  amos->add_option("--p", av.p);
  amos->add_option("--language", av.language);
  amos->add_option("--decider", av.decider);
  amos->add_option("--max-n", av.maxN)->check(CLI::PositiveNumber);
  amos->add_flag("--cycles", av.cycles);
  amos->add_option("--id-perms", av.idPermutations);

  SeparationConfig sep;
  std::optional<std::string> sepRational;
  auto* separation = app.add_subcommand("separation", "Build a separating instance pair");
  separation->add_option("--k", sep.k);
  separation->add_option("--rational", sepRational, "r,r'");
  separation->add_option("--p", sep.p);
  separation->add_option("--eps", sep.eps);
  separation->add_option("--t", sep.t);
  separation->add_option("--decider", sep.decider);

  SecureScanConfig sc;
  std::optional<std::string> scRational, scRegion;
  std::string scMode = "auto";
  auto* scan = app.add_subcommand("secure-scan", "Find secure windows");
  scan->add_option("--decider", sc.decider);
  scan->add_option("--input", sc.input, "Comma-separated path inputs");
  scan->add_option("--instance", sc.instanceFile, "JSON instance file");
  scan->add_option("--k", sc.k, "Scan the segments of the integer separation pair");
  scan->add_option("--rational", scRational, "Scan the segments of the rational separation pair");
  scan->add_option("--p", sc.p);
  scan->add_option("--eps", sc.eps);
  scan->add_option("--delta", sc.delta);
  scan->add_option("--lambda", sc.lambda);
  scan->add_option("--t", sc.t);
  scan->add_option("--region", scRegion, "lo:hi");
  scan->add_option("--mode", scMode)->check(CLI::IsMember({"auto", "exact", "mc"}));

  TreeCycleConfig tc;
  auto* tree = app.add_subcommand("tree-cycle", "Path versus cycle indistinguishability");
  tree->add_option("--p", tc.p);
  tree->add_option("--q", tc.q);
  tree->add_option("--t", tc.t);
  tree->add_option("--n", tc.n);
  tree->add_option("--decider", tc.decider);

  DerandomizeConfig dr;
  std::string oracle = "analytic";
  auto* derand = app.add_subcommand("derandomize", "Run the deterministic ball decider");
  derand->add_option("--language", dr.language)->required();
  derand->add_option("--input", dr.input)->required();
  derand->add_option("--radius", dr.radius);
  derand->add_option("--p", dr.p);
  derand->add_option("--q", dr.q);
  derand->add_option("--t", dr.t);
  derand->add_option("--oracle", oracle)->check(CLI::IsMember({"analytic", "brute"}));
  derand->add_option("--cap", dr.cap);

  try {
    args = apply_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CommandResult res;
  try {
    if (amos->parsed()) {
      av.trials = trials;
      av.seed = seed;
      res = cmd_amos_verify(av);
    } else if (separation->parsed()) {
      if (sepRational) sep.rational = parse_interval(*sepRational);
      sep.trials = trials;
      sep.seed = seed;
      res = cmd_separation(sep);
    } else if (scan->parsed()) {
      if (scRational) sc.rational = parse_interval(*scRational);
      if (scRegion) sc.region = parse_region(*scRegion);
      sc.mode = parse_mode(scMode);
      sc.trials = trials;
      sc.seed = seed;
      res = cmd_secure_scan(sc);
    } else if (tree->parsed()) {
      tc.trials = trials;
      tc.seed = seed;
      res = cmd_tree_cycle(tc);
    } else {
      dr.oracle = oracle == "brute" ? OracleKind::brute : OracleKind::analytic;
      res = cmd_derandomize(dr);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string text = csv ? flatten_csv(res.report) : res.report.dump(2) + "\n";
  if (outputPath) {
    std::ofstream f(*outputPath);
    if (!f) {
      err << "error: cannot write " << *outputPath << "\n";
      return kExitUsage;
    }
    f << text;
  } else {
    out << text;
  }
  return res.verdict ? kExitOk : kExitVerdict;
}

}  // namespace locdec::cli
