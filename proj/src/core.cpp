#include "locdec/core.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

namespace locdec {

std::string to_string(Symbol s) {
  if (s.is_marker()) return "⊗";
  if (s.is_empty()) return "ε";
  return std::to_string(s.code);
}

Symbol parse_symbol(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "⊗" || text == "X" || text == "x" || text == "#") return kMarker;
  if (text == "ε" || text == "e" || text.empty()) return kEmpty;
  unsigned value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || value >= Symbol::kMarkerCode) {
    throw std::invalid_argument("unrecognised input symbol '" + std::string(text) + "'");
  }
  return Symbol{static_cast<std::uint8_t>(value)};
}

std::vector<Symbol> parse_symbols(std::string_view csv) {
  std::vector<Symbol> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    auto comma = csv.find(',', start);
    if (comma == std::string_view::npos) comma = csv.size();
    out.push_back(parse_symbol(csv.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::vector<Symbol> symbols_from_bits(std::initializer_list<int> bits) {
  std::vector<Symbol> out;
  out.reserve(bits.size());
  for (int b : bits) out.push_back(Symbol{static_cast<std::uint8_t>(b)});
  return out;
}

Alphabet::Alphabet(std::vector<Symbol> symbols, std::optional<Symbol> marker)
    : symbols_(std::move(symbols)), marker_(marker) {
  auto sorted = symbols_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("alphabet symbols must be distinct");
  }
  if (marker_ && std::find(symbols_.begin(), symbols_.end(), *marker_) != symbols_.end()) {
    throw std::invalid_argument("alphabet marker must not be a base symbol");
  }
}

Alphabet Alphabet::binary() { return Alphabet({kZero, kOne}); }
Alphabet Alphabet::empty_input() { return Alphabet({kEmpty}); }

bool Alphabet::contains(Symbol s) const {
  return std::find(symbols_.begin(), symbols_.end(), s) != symbols_.end() ||
         (marker_ && *marker_ == s);
}

std::vector<Symbol> Alphabet::all_symbols() const {
  auto out = symbols_;
  if (marker_) out.push_back(*marker_);
  return out;
}

Alphabet Alphabet::with_marker(Symbol m) const {
  if (marker_) throw std::invalid_argument("alphabet already carries a marker");
  return Alphabet(symbols_, m);
}

std::string_view to_string(Topology t) { return t == Topology::path ? "path" : "cycle"; }

Subpath::Subpath(NodeIndex lo_, NodeIndex hi_) : lo(lo_), hi(hi_) {
  if (lo < 1 || hi < lo) {
    throw std::invalid_argument("subpath [" + std::to_string(lo) + "," + std::to_string(hi) +
                                "] is empty or starts before node 1");
  }
}

bool is_internal(const Subpath& s, std::size_t t, std::size_t n) {
  return s.lo >= t + 2 && s.hi + t + 1 <= n;
}

std::size_t Instance::degree(NodeIndex v) const {
  if (v < 1 || v > size()) throw std::out_of_range("node index out of range");
  if (topology_ == Topology::cycle) return 2;
  if (size() == 1) return 0;
  return (v == 1 || v == size()) ? 1 : 2;
}

bool Instance::is_path_endpoint(NodeIndex v) const {
  return topology_ == Topology::path && (v == 1 || v == size());
}

std::size_t Instance::selected_count() const {
  return static_cast<std::size_t>(std::count(inputs_.begin(), inputs_.end(), kOne));
}

Instance Instance::with_inputs(std::vector<Symbol> x) const {
  return topology_ == Topology::path ? make_path(std::move(x), ids_) : make_cycle(std::move(x), ids_);
}

Instance Instance::with_ids(std::vector<NodeId> ids) const {
  return topology_ == Topology::path ? make_path(inputs_, std::move(ids))
                                     : make_cycle(inputs_, std::move(ids));
}

std::vector<NodeId> default_ids(std::size_t n) {
  std::vector<NodeId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i + 1;
  return ids;
}

namespace {

void check_dimensions(const std::vector<Symbol>& x, const std::vector<NodeId>& ids) {
  if (x.empty()) throw std::invalid_argument("instance needs at least one node");
  if (x.size() != ids.size()) {
    throw std::invalid_argument("input vector has " + std::to_string(x.size()) +
                                " entries but identity vector has " + std::to_string(ids.size()));
  }
  std::unordered_set<NodeId> seen;
  seen.reserve(ids.size());
  for (NodeId id : ids) {
    if (id == 0) throw std::invalid_argument("identities must be positive");
    if (!seen.insert(id).second) {
      throw std::invalid_argument("duplicate identity " + std::to_string(id));
    }
  }
}

}  // namespace

Instance make_path(std::vector<Symbol> x, std::vector<NodeId> ids) {
  check_dimensions(x, ids);
  Instance inst;
  inst.topology_ = Topology::path;
  inst.inputs_ = std::move(x);
  inst.ids_ = std::move(ids);
  return inst;
}

Instance make_path(std::vector<Symbol> x) {
  auto ids = default_ids(x.size());
  return make_path(std::move(x), std::move(ids));
}

Instance make_cycle(std::vector<Symbol> x, std::vector<NodeId> ids) {
  if (x.size() < 3) throw std::invalid_argument("a cycle needs at least 3 nodes");
  check_dimensions(x, ids);
  Instance inst;
  inst.topology_ = Topology::cycle;
  inst.inputs_ = std::move(x);
  inst.ids_ = std::move(ids);
  return inst;
}

Instance make_cycle(std::vector<Symbol> x) {
  auto ids = default_ids(x.size());
  return make_cycle(std::move(x), std::move(ids));
}

std::optional<Symbol> View::input_at(std::ptrdiff_t offset) const {
  if (static_cast<std::size_t>(offset < 0 ? -offset : offset) > radius) {
    throw ContractViolation("view read at distance " + std::to_string(offset) +
                            " exceeds declared radius " + std::to_string(radius));
  }
  auto idx = static_cast<std::ptrdiff_t>(center) + offset;
  const auto n = static_cast<std::ptrdiff_t>(size());
  if (closed) idx = ((idx % n) + n) % n;
  if (idx < 0 || idx >= n) return std::nullopt;
  return inputs[static_cast<std::size_t>(idx)];
}

std::optional<NodeId> View::id_at(std::ptrdiff_t offset) const {
  if (static_cast<std::size_t>(offset < 0 ? -offset : offset) > radius) {
    throw ContractViolation("view read at distance " + std::to_string(offset) +
                            " exceeds declared radius " + std::to_string(radius));
  }
  auto idx = static_cast<std::ptrdiff_t>(center) + offset;
  const auto n = static_cast<std::ptrdiff_t>(size());
  if (closed) idx = ((idx % n) + n) % n;
  if (idx < 0 || idx >= n) return std::nullopt;
  return ids[static_cast<std::size_t>(idx)];
}

bool View::sees_endpoint() const {
  return std::any_of(degrees.begin(), degrees.end(), [](auto d) { return d <= 1; });
}

View ball(const Instance& inst, NodeIndex v, std::size_t r) {
  const std::size_t n = inst.size();
  if (v < 1 || v > n) {
    throw std::out_of_range("node " + std::to_string(v) + " outside 1.." + std::to_string(n));
  }
  View view;
  view.radius = r;
  auto push = [&](NodeIndex u) {
    view.inputs.push_back(inst.input(u));
    view.ids.push_back(inst.id(u));
    view.degrees.push_back(static_cast<std::uint8_t>(inst.degree(u)));
  };

  if (inst.topology() == Topology::path) {
    const NodeIndex lo = v > r ? v - r : 1;
    const NodeIndex hi = std::min(n, v + r);
    view.leftCut = v <= r;
    view.rightCut = v + r > n;
    view.center = v - lo;
    view.inputs.reserve(hi - lo + 1);
    for (NodeIndex u = lo; u <= hi; ++u) push(u);
    return view;
  }

  // Cycle: 2r+1 distinct nodes fit when n > 2r; otherwise every node is seen
  // and, when n <= 2r, so is the edge that closes the cycle.
  const std::size_t left = n > 2 * r ? r : (n - 1) / 2;
  const std::size_t count = n > 2 * r ? 2 * r + 1 : n;
  view.closed = n <= 2 * r;
  view.center = left;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t pos0 = (v - 1 + n - left + k) % n;
    push(pos0 + 1);
  }
  return view;
}

}  // namespace locdec
