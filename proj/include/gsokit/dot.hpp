#pragma once

// Deterministic DOT emission: vertices first, then edges, everything in
// sorted order and quoted, no styling beyond solid-versus-dashed edge sets.
// Undirected graphs emit each unordered pair once.

#include <string>

#include "gsokit/relgraph.hpp"

namespace gsokit {

// Directed view; `dashed` edges render with [style=dashed] after the solid
// ones. Vertices are the union of both edge sets' vertex sets.
inline std::string dot_digraph(const std::string& name, const Digraph& solid,
                               const Digraph& dashed = Digraph()) {
  std::string out = "digraph " + name + " {\n";
  NodeSet vertices = solid.vertices();
  vertices.insert(dashed.vertices().begin(), dashed.vertices().end());
  for (const auto& v : vertices) out += "  \"" + v + "\";\n";
  for (const auto& [a, b] : solid.edges()) {
    out += "  \"" + a + "\" -> \"" + b + "\";\n";
  }
  for (const auto& [a, b] : dashed.edges()) {
    out += "  \"" + a + "\" -> \"" + b + "\" [style=dashed];\n";
  }
  out += "}\n";
  return out;
}

// Undirected view: every unordered pair once, with "--" edges.
inline std::string dot_graph(const std::string& name, const UGraph& g) {
  std::string out = "graph " + name + " {\n";
  for (const auto& v : g.vertices()) out += "  \"" + v + "\";\n";
  for (const auto& [a, b] : unordered_pairs(g)) {
    out += "  \"" + a + "\" -- \"" + b + "\";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace gsokit
