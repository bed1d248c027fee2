#pragma once

// Name-and-parameter registry for languages and deciders, and JSON encodings
// of the lab's value types.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "locdec/constructions.hpp"
#include "locdec/deciders.hpp"
#include "locdec/derand.hpp"
#include "locdec/secure.hpp"

namespace locdec {

using Json = nlohmann::ordered_json;

/// Malformed or unknown language/decider spec.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "name:key=value,key=value" split into its parts.
struct Spec {
  std::string name;
  std::map<std::string, std::string> args;
};

Spec parse_spec(std::string_view text);

/// "amos:k=2", "amos-promise:a=2,b=3", "tree", "no-adjacent", "all".
Language parse_language(std::string_view text);
/// "amos:k=2,p=0.64", "amos-promise:a=2,b=3,p=0.5", "always-yes", "coin:p=0.9",
/// "endpoint-witness:t=1,p=0.9", "neighbourhood-coin:t=1", "fixed-id-rejector:id=3".
DeciderPtr parse_decider(std::string_view text);

Json to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

Json to_json(const Subpath& s);
Json to_json(const NodeSet& nodes);
Json to_json(const ProbabilityReport& r);
Json to_json(const SecureReport& r);
Json to_json(const ThresholdClass& c);
Json to_json(const PQMeasurement& m);
Json to_json(const SeparationPair& pair);
Json to_json(const SeparationBlocks& blocks);
Json to_json(const RatioDiagnostic& d);
Json to_json(const TreeSetup& s);
Json to_json(const TreeUnionDiagnostic& d);
Json to_json(const ClosureResult& r);

Json symbols_json(const std::vector<Symbol>& x);

/// Flattens nested objects and arrays into "dotted.key,value" CSV rows.
std::string flatten_csv(const Json& j);

}  // namespace locdec
