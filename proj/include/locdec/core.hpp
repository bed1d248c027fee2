#pragma once

// Path and cycle instances, identity assignments, subpaths and radius-t views.
//
// Node positions are 1-based (node 1 is the left end of a path). Positions are
// bookkeeping for the simulator only; deciders see a View, which carries
// identities, inputs and degrees but never positions.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace locdec {

using NodeIndex = std::size_t;
using NodeId = std::uint64_t;

/// Input symbol. Small integers are ordinary symbols ("0", "1", ...); two
/// reserved codes stand for the endpoint marker and the empty input.
struct Symbol {
  std::uint8_t code = 0;

  static constexpr std::uint8_t kMarkerCode = 0xFE;
  static constexpr std::uint8_t kEmptyCode = 0xFF;

  static constexpr Symbol marker() { return Symbol{kMarkerCode}; }
  static constexpr Symbol empty() { return Symbol{kEmptyCode}; }

  constexpr bool is_marker() const { return code == kMarkerCode; }
  constexpr bool is_empty() const { return code == kEmptyCode; }

  constexpr bool operator==(const Symbol&) const = default;
  constexpr auto operator<=>(const Symbol&) const = default;
};

inline constexpr Symbol kZero{0};
inline constexpr Symbol kOne{1};
inline constexpr Symbol kMarker = Symbol::marker();
inline constexpr Symbol kEmpty = Symbol::empty();

std::string to_string(Symbol s);
/// Accepts decimal digits, "⊗" (or "X", "#") for the marker and "ε" (or "e",
/// "") for the empty input.
Symbol parse_symbol(std::string_view text);
std::vector<Symbol> parse_symbols(std::string_view csv);
std::vector<Symbol> symbols_from_bits(std::initializer_list<int> bits);

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Symbol> symbols,
                    std::optional<Symbol> marker = std::nullopt);

  static Alphabet binary();
  static Alphabet empty_input();

  const std::vector<Symbol>& symbols() const { return symbols_; }
  const std::optional<Symbol>& marker() const { return marker_; }
  bool contains(Symbol s) const;
  /// Base symbols followed by the marker, if any.
  std::vector<Symbol> all_symbols() const;
  Alphabet with_marker(Symbol m = kMarker) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<Symbol> symbols_;
  std::optional<Symbol> marker_;
};

enum class Topology { path, cycle };

std::string_view to_string(Topology t);

struct Subpath {
  NodeIndex lo = 1;
  NodeIndex hi = 1;

  Subpath() = default;
  Subpath(NodeIndex lo_, NodeIndex hi_);

  std::size_t length() const { return hi - lo + 1; }
  bool contains(NodeIndex v) const { return lo <= v && v <= hi; }
  bool operator==(const Subpath&) const = default;
};

/// A subpath [lo,hi] is internal for t-round algorithms when lo >= t+2 and
/// hi <= n-t-1, i.e. no node of it sees an endpoint of the path.
bool is_internal(const Subpath& s, std::size_t t, std::size_t n);

class Instance {
 public:
  Topology topology() const { return topology_; }
  std::size_t size() const { return inputs_.size(); }
  const std::vector<Symbol>& inputs() const { return inputs_; }
  const std::vector<NodeId>& ids() const { return ids_; }

  Symbol input(NodeIndex v) const { return inputs_.at(v - 1); }
  NodeId id(NodeIndex v) const { return ids_.at(v - 1); }
  std::size_t degree(NodeIndex v) const;
  bool is_path_endpoint(NodeIndex v) const;
  /// Number of nodes carrying input 1.
  std::size_t selected_count() const;

  Instance with_inputs(std::vector<Symbol> x) const;
  Instance with_ids(std::vector<NodeId> ids) const;

  bool operator==(const Instance&) const = default;

 private:
  friend Instance make_path(std::vector<Symbol>, std::vector<NodeId>);
  friend Instance make_cycle(std::vector<Symbol>, std::vector<NodeId>);

  Topology topology_ = Topology::path;
  std::vector<Symbol> inputs_;
  std::vector<NodeId> ids_;
};

/// 1..n
std::vector<NodeId> default_ids(std::size_t n);

Instance make_path(std::vector<Symbol> x, std::vector<NodeId> ids);
Instance make_path(std::vector<Symbol> x);
Instance make_cycle(std::vector<Symbol> x, std::vector<NodeId> ids);
Instance make_cycle(std::vector<Symbol> x);

/// Thrown when a decider reads beyond the radius it declared.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The radius-r neighbourhood of a node as the node itself perceives it after
/// r synchronous rounds. Windows are ordered left to right along the path (or
/// in increasing position order around a cycle).
struct View {
  std::size_t radius = 0;
  std::size_t center = 0;  // offset of the viewing node inside the window
  std::vector<Symbol> inputs;
  std::vector<NodeId> ids;
  std::vector<std::uint8_t> degrees;
  bool leftCut = false;   // fewer than `radius` nodes exist to the left
  bool rightCut = false;  // fewer than `radius` nodes exist to the right
  bool closed = false;    // the whole (short) cycle is visible, closing edge included

  std::size_t size() const { return inputs.size(); }
  Symbol own_input() const { return inputs[center]; }
  NodeId own_id() const { return ids[center]; }
  std::size_t own_degree() const { return degrees[center]; }

  /// Input of the node `offset` hops away (negative = left). Reading past the
  /// declared radius is a contract violation; nullopt means no node there.
  std::optional<Symbol> input_at(std::ptrdiff_t offset) const;
  std::optional<NodeId> id_at(std::ptrdiff_t offset) const;
  /// True if some node of degree <= 1 is visible.
  bool sees_endpoint() const;

  bool operator==(const View&) const = default;
};

View ball(const Instance& inst, NodeIndex v, std::size_t r);

}  // namespace locdec
