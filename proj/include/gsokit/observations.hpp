#pragma once

// Stratified orders and their combinatorial normal form. A stratified order
// is a strict partial order whose "simultaneity" (mutual incomparability
// among distinct elements) is transitive; equivalently, a sequence of
// disjoint steps — a RankingStructure. Step sequences are the textual form
// ("{o1,o2}{o3}"). Also defined here: the frown order (y not strictly after
// x) and the step-saturated graph of a ranking, the two derived relations
// reconstruction is built on.

#include <cctype>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gsokit/errors.hpp"
#include "gsokit/relgraph.hpp"
#include "gsokit/validation.hpp"

namespace gsokit {

// ---------------------------------------------------------------------------
// StratOrder: a relation said to be stratified; the carrier is the vertex
// set. Validity is checked by is_stratified, not by construction.

struct StratOrder {
  Digraph order;

  StratOrder() = default;
  explicit StratOrder(Digraph o) : order(std::move(o)) {}
  StratOrder(const NodeSet& carrier, const EdgeSet& edges) : order(carrier, edges) {}

  const NodeSet& carrier() const { return order.vertices(); }

  bool operator==(const StratOrder& other) const = default;
};

// The three stratified-order conditions:
//   O3  irreflexive
//   O4  transitive
//   O6  simultaneity transitive: a incomparable b, b incomparable c, and all
//       distinct forces a incomparable c
// Reports the first `witness_cap` witnesses per condition; when `counts` is
// given it receives the full violation tally per condition regardless of cap.
inline ValidationReport is_stratified(const Digraph& rel, std::size_t witness_cap = 1,
                                      std::map<AxiomId, std::size_t>* counts = nullptr) {
  ValidationReport report(witness_cap * 3 + 3);
  std::map<AxiomId, std::size_t> tally;
  auto note = [&](const AxiomId& ax, std::vector<NodeId> w) {
    if (tally[ax]++ < witness_cap) report.add(ax, std::move(w));
  };

  for (const auto& a : rel.vertices()) {
    if (rel.has_edge(a, a)) note("O3", {a});
  }
  for (const auto& a : rel.vertices()) {
    for (const auto& b : rel.vertices()) {
      if (!rel.has_edge(a, b)) continue;
      for (const auto& c : rel.vertices()) {
        if (rel.has_edge(b, c) && !rel.has_edge(a, c)) note("O4", {a, b, c});
      }
    }
  }
  auto incomparable = [&](const NodeId& x, const NodeId& y) {
    return x != y && !rel.has_edge(x, y) && !rel.has_edge(y, x);
  };
  for (const auto& a : rel.vertices()) {
    for (const auto& b : rel.vertices()) {
      if (!incomparable(a, b)) continue;
      for (const auto& c : rel.vertices()) {
        if (incomparable(b, c) && a != c && !incomparable(a, c)) note("O6", {a, b, c});
      }
    }
  }
  if (counts) *counts = std::move(tally);
  return report;
}

// ---------------------------------------------------------------------------
// RankingStructure: an ordered partition. Blocks are kept member-sorted; the
// block sequence itself is semantic and never re-sorted.

class RankingStructure {
 public:
  RankingStructure() = default;

  explicit RankingStructure(std::vector<std::vector<NodeId>> blocks)
      : blocks_(std::move(blocks)) {
    NodeSet seen;
    for (auto& block : blocks_) {
      if (block.empty()) {
        throw Error(ErrorKind::ParseError, "ranking block must be nonempty");
      }
      std::sort(block.begin(), block.end());
      for (const auto& id : block) {
        if (!seen.insert(id).second) {
          throw Error(ErrorKind::DuplicateOccurrence, "'" + id + "' appears twice");
        }
      }
    }
  }

  const std::vector<std::vector<NodeId>>& blocks() const { return blocks_; }

  NodeSet carrier() const {
    NodeSet out;
    for (const auto& block : blocks_) out.insert(block.begin(), block.end());
    return out;
  }

  bool operator==(const RankingStructure& other) const = default;

  // Canonical order: fewer blocks first, then lexicographic on the block
  // sequence. Used for every sorted listing of rankings.
  bool operator<(const RankingStructure& other) const {
    if (blocks_.size() != other.blocks_.size()) return blocks_.size() < other.blocks_.size();
    return blocks_ < other.blocks_;
  }

 private:
  std::vector<std::vector<NodeId>> blocks_;
};

// ---------------------------------------------------------------------------
// Conversions between the two representations

// Blocks = simultaneity classes, sequenced by the induced block order.
inline RankingStructure to_ranking(const StratOrder& s) {
  ValidationReport check = is_stratified(s.order);
  if (!check.empty()) {
    throw Error(ErrorKind::NotStratified, to_line(*check.begin()));
  }
  const Digraph& rel = s.order;
  std::vector<std::vector<NodeId>> classes;
  NodeSet assigned;
  for (const auto& a : rel.vertices()) {
    if (assigned.count(a)) continue;
    std::vector<NodeId> cls{a};
    assigned.insert(a);
    for (const auto& b : rel.vertices()) {
      if (!assigned.count(b) && !rel.has_edge(a, b) && !rel.has_edge(b, a)) {
        cls.push_back(b);
        assigned.insert(b);
      }
    }
    classes.push_back(std::move(cls));
  }
  // Distinct classes are totally ordered; any representatives decide.
  std::sort(classes.begin(), classes.end(),
            [&](const std::vector<NodeId>& x, const std::vector<NodeId>& y) {
              return rel.has_edge(x.front(), y.front());
            });
  return RankingStructure(std::move(classes));
}

// All pairs pointing from an earlier block to a later one.
inline StratOrder from_ranking(const RankingStructure& r) {
  Digraph order(r.carrier());
  const auto& blocks = r.blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      for (const auto& a : blocks[i]) {
        for (const auto& b : blocks[j]) order.add_edge(a, b);
      }
    }
  }
  return StratOrder(std::move(order));
}

// The step-saturated graph: the ranking's order plus the complete graph on
// each block.
inline Digraph graph_gi(const RankingStructure& r) {
  Digraph out = from_ranking(r).order;
  for (const auto& block : r.blocks()) {
    for (const auto& a : block) {
      for (const auto& b : block) {
        if (a != b) out.add_edge(a, b);
      }
    }
  }
  return out;
}

// Frown order: (x,y) with x != y and y not strictly before x — "x no later
// than y" as induced by one run. For stratified s this equals
// graph_gi(to_ranking(s)).
inline Digraph frown_order(const StratOrder& s) {
  Digraph out(s.carrier());
  for (const auto& x : s.carrier()) {
    for (const auto& y : s.carrier()) {
      if (x != y && !s.order.has_edge(y, x)) out.add_edge(x, y);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Step-sequence text: ('{' id (',' id)* '}')+ with ids [A-Za-z0-9_]+ and
// insignificant whitespace between tokens.

namespace detail {
inline bool id_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
}  // namespace detail

inline RankingStructure parse_steps(const std::string& text) {
  std::vector<std::vector<NodeId>> blocks;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& expected) -> void {
    throw Error(ErrorKind::ParseError,
                "expected " + expected + " at offset " + std::to_string(i));
  };
  auto read_id = [&]() -> NodeId {
    std::size_t start = i;
    while (i < text.size() && detail::id_char(text[i])) ++i;
    if (i == start) fail("identifier");
    return text.substr(start, i - start);
  };

  skip_ws();
  if (i >= text.size() || text[i] != '{') fail("'{'");
  while (i < text.size() && text[i] == '{') {
    ++i;
    std::vector<NodeId> block;
    skip_ws();
    block.push_back(read_id());
    skip_ws();
    while (i < text.size() && text[i] == ',') {
      ++i;
      skip_ws();
      block.push_back(read_id());
      skip_ws();
    }
    if (i >= text.size() || text[i] != '}') fail("'}' or ','");
    ++i;
    blocks.push_back(std::move(block));
    skip_ws();
  }
  if (i != text.size()) fail("'{' or end of input");
  return RankingStructure(std::move(blocks));  // throws DuplicateOccurrence
}

inline std::string render_steps(const RankingStructure& r) {
  std::string out;
  for (const auto& block : r.blocks()) {
    out += '{';
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) out += ',';
      out += block[i];
    }
    out += '}';
  }
  return out;
}

}  // namespace gsokit
