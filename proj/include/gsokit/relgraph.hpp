#pragma once

// Finite directed graphs over ordered node ids, plus the relation algebra the
// rest of the toolkit is built from: transitive closure/reduction, the
// comparability and incomparability graphs, complements and symmetric
// closures, and plain edge-set algebra.
//
// Conventions:
//  - Node ids are strings; their lexicographic order is the canonical order
//    used by every serializer, so all containers are ordered sets.
//  - A well-formed graph has no self-loop. The type can still *hold* one,
//    because validators must be able to report reflexivity violations on
//    arbitrary input; every derived operation here emits loop-free output,
//    and reduction treats a self-loop as the cycle it is.
//  - "Undirected" graphs are directed graphs that happen to be symmetric;
//    UGraph is an alias kept for signature readability.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gsokit/errors.hpp"

namespace gsokit {

using NodeId = std::string;
using Edge = std::pair<NodeId, NodeId>;
using NodeSet = std::set<NodeId>;
using EdgeSet = std::set<Edge>;

class Digraph {
 public:
  Digraph() = default;

  explicit Digraph(NodeSet vertices, EdgeSet edges = {})
      : vertices_(std::move(vertices)) {
    for (const auto& e : edges) add_edge(e.first, e.second);
  }

  void add_vertex(const NodeId& v) { vertices_.insert(v); }

  // Endpoints are added to the vertex set as needed.
  void add_edge(const NodeId& u, const NodeId& v) {
    vertices_.insert(u);
    vertices_.insert(v);
    edges_.insert({u, v});
  }

  void remove_edge(const NodeId& u, const NodeId& v) { edges_.erase({u, v}); }

  bool has_vertex(const NodeId& v) const { return vertices_.count(v) != 0; }
  bool has_edge(const NodeId& u, const NodeId& v) const { return edges_.count({u, v}) != 0; }

  const NodeSet& vertices() const { return vertices_; }
  const EdgeSet& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  bool operator==(const Digraph& other) const = default;

 private:
  NodeSet vertices_;
  EdgeSet edges_;
};

using UGraph = Digraph;

// ---------------------------------------------------------------------------
// Basic predicates

inline bool has_self_loop(const Digraph& g) {
  return std::any_of(g.edges().begin(), g.edges().end(),
                     [](const Edge& e) { return e.first == e.second; });
}

inline bool is_symmetric(const Digraph& g) {
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [&](const Edge& e) { return g.has_edge(e.second, e.first); });
}

inline bool is_irreflexive(const Digraph& g) { return !has_self_loop(g); }

// ---------------------------------------------------------------------------
// Closure, reduction, acyclicity

namespace detail {

// Successor-set closure via repeated squaring of reachability (Warshall on
// ordered sets). Small inputs only; clarity over asymptotics.
inline std::map<NodeId, NodeSet> reachability(const Digraph& g) {
  std::map<NodeId, NodeSet> reach;
  for (const auto& v : g.vertices()) reach[v];
  for (const auto& e : g.edges()) reach[e.first].insert(e.second);
  for (const auto& k : g.vertices()) {
    const NodeSet& via = reach[k];
    for (auto& [v, succ] : reach) {
      if (succ.count(k)) succ.insert(via.begin(), via.end());
    }
  }
  return reach;
}

}  // namespace detail

// Edge (u,v) iff g has a nonempty path from u to v, minus any self-loops a
// cycle would contribute: closures stay loop-free by construction.
inline Digraph transitive_closure(const Digraph& g) {
  Digraph out(g.vertices());
  for (const auto& [v, succ] : detail::reachability(g)) {
    for (const auto& w : succ) {
      if (v != w) out.add_edge(v, w);
    }
  }
  return out;
}

inline bool is_acyclic(const Digraph& g) {
  auto reach = detail::reachability(g);
  return std::none_of(reach.begin(), reach.end(),
                      [](const auto& kv) { return kv.second.count(kv.first) != 0; });
}

// True iff the edge set already equals its closure. Self-loops are ignored on
// both sides, so a pure 2-cycle counts as transitive.
inline bool is_transitive(const Digraph& g) {
  Digraph closed = transitive_closure(g);
  EdgeSet loop_free;
  for (const auto& e : g.edges()) {
    if (e.first != e.second) loop_free.insert(e);
  }
  return loop_free == closed.edges();
}

// Unique minimal edge set with the same transitive closure. Only defined for
// acyclic input; an edge is redundant exactly when a longer path covers it.
inline Digraph transitive_reduction(const Digraph& g) {
  if (!is_acyclic(g)) {
    throw Error(ErrorKind::CyclicInput, "transitive reduction needs an acyclic graph");
  }
  Digraph closed = transitive_closure(g);
  Digraph out(g.vertices());
  for (const auto& [u, v] : closed.edges()) {
    bool covered = std::any_of(closed.vertices().begin(), closed.vertices().end(),
                               [&](const NodeId& w) {
                                 return w != u && w != v && closed.has_edge(u, w) &&
                                        closed.has_edge(w, v);
                               });
    if (!covered) out.add_edge(u, v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Comparability / incomparability / complement / symmetric closure

// {u,v} iff at least one direction is an edge (symmetric result, loop-free).
inline UGraph comparability(const Digraph& g) {
  UGraph out(g.vertices());
  for (const auto& [u, v] : g.edges()) {
    if (u == v) continue;
    out.add_edge(u, v);
    out.add_edge(v, u);
  }
  return out;
}

// {u,v} iff u != v and *neither* direction is an edge: incomparability is the
// mutual absence of order, not the complement of one direction.
inline UGraph incomparability(const Digraph& g) {
  UGraph out(g.vertices());
  for (const auto& u : g.vertices()) {
    for (const auto& v : g.vertices()) {
      if (u < v && !g.has_edge(u, v) && !g.has_edge(v, u)) {
        out.add_edge(u, v);
        out.add_edge(v, u);
      }
    }
  }
  return out;
}

// Complement within unordered pairs of the vertex set (diagonal excluded).
inline UGraph complement(const UGraph& g) {
  UGraph out(g.vertices());
  for (const auto& u : g.vertices()) {
    for (const auto& v : g.vertices()) {
      if (u < v && !g.has_edge(u, v) && !g.has_edge(v, u)) {
        out.add_edge(u, v);
        out.add_edge(v, u);
      }
    }
  }
  return out;
}

inline Digraph symmetric_closure(const Digraph& g) {
  Digraph out(g.vertices());
  for (const auto& [u, v] : g.edges()) {
    out.add_edge(u, v);
    out.add_edge(v, u);
  }
  return out;
}

// All ordered pairs of distinct members: the complete graph K(A).
inline Digraph complete_graph(const NodeSet& members) {
  Digraph out(members);
  for (const auto& u : members) {
    for (const auto& v : members) {
      if (u != v) out.add_edge(u, v);
    }
  }
  return out;
}

// Induced subgraph on the given vertices.
inline Digraph restrict(const Digraph& g, const NodeSet& keep) {
  NodeSet vs;
  std::set_intersection(g.vertices().begin(), g.vertices().end(), keep.begin(), keep.end(),
                        std::inserter(vs, vs.end()));
  Digraph out(vs);
  for (const auto& [u, v] : g.edges()) {
    if (keep.count(u) && keep.count(v)) out.add_edge(u, v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Edge-set algebra. These are relation operations over one shared carrier, so
// differing vertex sets are a caller bug, not a merge.

namespace detail {
inline void require_same_vertices(const Digraph& a, const Digraph& b) {
  if (a.vertices() != b.vertices()) {
    throw Error(ErrorKind::VertexMismatch, "edge-set algebra needs one shared vertex set");
  }
}
}  // namespace detail

inline Digraph graph_union(const Digraph& a, const Digraph& b) {
  detail::require_same_vertices(a, b);
  Digraph out = a;
  for (const auto& [u, v] : b.edges()) out.add_edge(u, v);
  return out;
}

inline Digraph graph_intersection(const Digraph& a, const Digraph& b) {
  detail::require_same_vertices(a, b);
  Digraph out(a.vertices());
  for (const auto& [u, v] : a.edges()) {
    if (b.has_edge(u, v)) out.add_edge(u, v);
  }
  return out;
}

inline Digraph graph_difference(const Digraph& a, const Digraph& b) {
  detail::require_same_vertices(a, b);
  Digraph out(a.vertices());
  for (const auto& [u, v] : a.edges()) {
    if (!b.has_edge(u, v)) out.add_edge(u, v);
  }
  return out;
}

// Unordered-pair view of a symmetric graph: each pair once, lesser id first.
inline std::set<std::pair<NodeId, NodeId>> unordered_pairs(const UGraph& g) {
  std::set<std::pair<NodeId, NodeId>> out;
  for (const auto& [u, v] : g.edges()) {
    if (u < v) out.insert({u, v});
    else if (v < u) out.insert({v, u});
  }
  return out;
}

}  // namespace gsokit
