#pragma once

// The first-order core: three-sorted universes (events, event occurrences,
// observations), the order specification over occurrences (earlier-than,
// not-later-than, nonsimultaneous) with its nine axioms, and the equivalent
// base/residual/slack decomposition used for generation and classification.
//
// Axiom checks never throw on bad input - reporting bad input is their job.
// They return ValidationReports whose entries are deterministic: axioms in
// numeric order, witnesses in lexicographic order of the assignment.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gsokit/errors.hpp"
#include "gsokit/relgraph.hpp"
#include "gsokit/validation.hpp"

namespace gsokit {

// ---------------------------------------------------------------------------
// Universe: the three sorts plus the occurrence-to-event assignment.
// occurrence_of is a raw pair set (not a map) so totality and single-
// valuedness stay reportable properties rather than structural guarantees.

struct Universe {
  NodeSet events;
  NodeSet occurrences;
  NodeSet observations;
  std::set<std::pair<NodeId, NodeId>> occurrence_of;  // (occurrence, event)

  bool operator==(const Universe& other) const = default;

  // Every id the universe mentions, declared or not; undeclared ids are what
  // the sort axioms flag.
  NodeSet elements() const {
    NodeSet out = events;
    out.insert(occurrences.begin(), occurrences.end());
    out.insert(observations.begin(), observations.end());
    for (const auto& [o, e] : occurrence_of) {
      out.insert(o);
      out.insert(e);
    }
    return out;
  }
};

// E1: every element belongs to a sort.
// E2: the sorts are pairwise disjoint.
// E3: occurrence_of pairs relate an event occurrence to an event.
// E4: every event occurrence is an occurrence of some event.
// E5: ... of at most one event.
inline ValidationReport validate_universe(const Universe& u, std::size_t cap = 100) {
  ValidationReport report(cap);
  const NodeSet elems = u.elements();

  for (const auto& x : elems) {
    if (!u.events.count(x) && !u.occurrences.count(x) && !u.observations.count(x)) {
      if (!report.add("E1", {x})) return report;
    }
  }
  for (const auto& x : elems) {
    int sorts = (u.events.count(x) ? 1 : 0) + (u.occurrences.count(x) ? 1 : 0) +
                (u.observations.count(x) ? 1 : 0);
    if (sorts > 1) {
      if (!report.add("E2", {x})) return report;
    }
  }
  for (const auto& [o, e] : u.occurrence_of) {
    if (!u.occurrences.count(o) || !u.events.count(e)) {
      if (!report.add("E3", {o, e})) return report;
    }
  }
  for (const auto& o : u.occurrences) {
    bool assigned = false;
    for (const auto& [oo, e] : u.occurrence_of) {
      if (oo == o) {
        assigned = true;
        break;
      }
    }
    if (!assigned) {
      if (!report.add("E4", {o})) return report;
    }
  }
  for (const auto& o : u.occurrences) {
    std::vector<NodeId> targets;
    for (const auto& [oo, e] : u.occurrence_of) {
      if (oo == o) targets.push_back(e);
    }
    if (targets.size() > 1) {
      if (!report.add("E5", {o, targets[0], targets[1]})) return report;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// GsoSpec: the three order relations over one occurrence set. All three are
// stored explicitly (nonsimultaneous symmetric only when valid) so that every
// axiom, including the intersection law and symmetry, stays checkable on
// arbitrary input.

struct GsoSpec {
  NodeSet occurrences;
  Digraph earlier_than;
  Digraph not_later_than;
  UGraph nonsimultaneous;

  bool operator==(const GsoSpec& other) const = default;
};

// Builds a spec whose graphs live on occurrences plus any stray endpoints
// (strays are kept so the validator can report them).
inline GsoSpec make_spec(const NodeSet& occurrences, const EdgeSet& earlier,
                         const EdgeSet& not_later, const EdgeSet& nonsim) {
  GsoSpec s;
  s.occurrences = occurrences;
  s.earlier_than = Digraph(occurrences, earlier);
  s.not_later_than = Digraph(occurrences, not_later);
  s.nonsimultaneous = Digraph(occurrences, nonsim);
  return s;
}

inline GsoSpec empty_spec(const NodeSet& occurrences) {
  return make_spec(occurrences, {}, {}, {});
}

namespace detail {

// Domain of quantification for spec axioms: declared occurrences plus every
// id a relation mentions.
inline NodeSet spec_elements(const GsoSpec& s) {
  NodeSet out = s.occurrences;
  for (const Digraph* g : {&s.earlier_than, &s.not_later_than, &s.nonsimultaneous}) {
    out.insert(g->vertices().begin(), g->vertices().end());
    for (const auto& [a, b] : g->edges()) {
      out.insert(a);
      out.insert(b);
    }
  }
  return out;
}

}  // namespace detail

// The nine spec axioms:
//   GSO1-GSO3  relation fields lie within the occurrence set
//   GSO4/GSO5  nonsimultaneous irreflexive / symmetric
//   GSO6       earlier_than is exactly not_later_than intersect nonsimultaneous
//   GSO7       not_later_than irreflexive
//   GSO8       not_later_than weakly transitive (endpoints may coincide)
//   GSO9       not_later_than composed with earlier_than forces earlier_than
inline ValidationReport validate_spec(const GsoSpec& s, std::size_t cap = 100) {
  ValidationReport report(cap);
  const Digraph& et = s.earlier_than;
  const Digraph& nlt = s.not_later_than;
  const Digraph& ns = s.nonsimultaneous;
  const NodeSet elems = detail::spec_elements(s);

  for (const auto& [a, b] : et.edges()) {
    if (!s.occurrences.count(a) || !s.occurrences.count(b)) {
      if (!report.add("GSO1", {a, b})) return report;
    }
  }
  for (const auto& [a, b] : nlt.edges()) {
    if (!s.occurrences.count(a) || !s.occurrences.count(b)) {
      if (!report.add("GSO2", {a, b})) return report;
    }
  }
  for (const auto& [a, b] : ns.edges()) {
    if (!s.occurrences.count(a) || !s.occurrences.count(b)) {
      if (!report.add("GSO3", {a, b})) return report;
    }
  }
  for (const auto& a : elems) {
    if (ns.has_edge(a, a)) {
      if (!report.add("GSO4", {a})) return report;
    }
  }
  for (const auto& [a, b] : ns.edges()) {
    if (!ns.has_edge(b, a)) {
      if (!report.add("GSO5", {a, b})) return report;
    }
  }
  for (const auto& a : elems) {
    for (const auto& b : elems) {
      bool lhs = nlt.has_edge(a, b) && ns.has_edge(a, b);
      bool rhs = et.has_edge(a, b);
      if (lhs != rhs) {
        if (!report.add("GSO6", {a, b})) return report;
      }
    }
  }
  for (const auto& a : elems) {
    if (nlt.has_edge(a, a)) {
      if (!report.add("GSO7", {a})) return report;
    }
  }
  for (const auto& a : elems) {
    for (const auto& b : elems) {
      if (!nlt.has_edge(a, b)) continue;
      for (const auto& c : elems) {
        if (nlt.has_edge(b, c) && a != c && !nlt.has_edge(a, c)) {
          if (!report.add("GSO8", {a, b, c})) return report;
        }
      }
    }
  }
  for (const auto& a : elems) {
    for (const auto& b : elems) {
      for (const auto& c : elems) {
        bool premise = (nlt.has_edge(a, b) && et.has_edge(b, c)) ||
                       (et.has_edge(a, b) && nlt.has_edge(b, c));
        if (premise && !et.has_edge(a, c)) {
          if (!report.add("GSO9", {a, b, c})) return report;
        }
      }
    }
  }
  return report;
}

// The intersection law as a constructor: earlier_than derived from the other
// two relations.
inline Digraph derive_earlier_than(const Digraph& not_later, const UGraph& nonsim) {
  return graph_intersection(not_later, nonsim);
}

// Consequences of the axioms, re-checked directly (test utility; a valid spec
// can never fail these):
//   PROP1  earlier_than is a strict partial order
//   PROP2  mutual not_later_than rules out nonsimultaneous
//   PROP3  earlier_than one way rules out not_later_than the other way
inline ValidationReport check_derived_propositions(const GsoSpec& s, std::size_t cap = 100) {
  ValidationReport report(cap);
  const Digraph& et = s.earlier_than;
  const Digraph& nlt = s.not_later_than;
  const Digraph& ns = s.nonsimultaneous;
  const NodeSet elems = detail::spec_elements(s);

  for (const auto& a : elems) {
    if (et.has_edge(a, a)) {
      if (!report.add("PROP1", {a})) return report;
    }
  }
  for (const auto& a : elems) {
    for (const auto& b : elems) {
      if (!et.has_edge(a, b)) continue;
      for (const auto& c : elems) {
        if (et.has_edge(b, c) && !et.has_edge(a, c)) {
          if (!report.add("PROP1", {a, b, c})) return report;
        }
      }
    }
  }
  for (const auto& [a, b] : nlt.edges()) {
    if (nlt.has_edge(b, a) && ns.has_edge(a, b)) {
      if (!report.add("PROP2", {a, b})) return report;
    }
  }
  for (const auto& [a, b] : et.edges()) {
    if (nlt.has_edge(b, a)) {
      if (!report.add("PROP3", {a, b})) return report;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Decomposition: a valid spec is equivalently a transitive acyclic base
// (earlier_than), a residual overlay (the strictly-weaker not_later_than
// edges), and a symmetric slack (nonsimultaneity beyond base comparability).

struct SpecDecomposition {
  Digraph base;      // acyclic, transitive
  Digraph residual;  // within incomparability(base); base+residual transitive
  UGraph slack;      // symmetric, within incomparability(base+residual)

  bool operator==(const SpecDecomposition& other) const = default;
};

inline SpecDecomposition decompose_spec(const GsoSpec& s) {
  ValidationReport check = validate_spec(s);
  if (!check.empty()) {
    throw Error(ErrorKind::InvalidSpec, "cannot decompose: " + to_line(*check.begin()));
  }
  SpecDecomposition d;
  d.base = Digraph(s.occurrences, s.earlier_than.edges());
  d.residual = graph_difference(Digraph(s.occurrences, s.not_later_than.edges()), d.base);
  d.slack = graph_difference(Digraph(s.occurrences, s.nonsimultaneous.edges()),
                             comparability(d.base));
  return d;
}

// Checks every decomposition condition; empty iff compose_spec will accept.
// Condition ids: D1 base acyclic+transitive, D2 residual within
// incomparability(base), D3 base+residual transitive, D4 no mixed triangle
// (base/residual or residual/base composing to residual), D5 slack symmetric
// irreflexive, D6 slack within incomparability(base+residual).
inline ValidationReport validate_decomposition(const SpecDecomposition& d,
                                               std::size_t cap = 100) {
  ValidationReport report(cap);
  if (d.base.vertices() != d.residual.vertices() || d.base.vertices() != d.slack.vertices()) {
    throw Error(ErrorKind::VertexMismatch,
                "decomposition parts must share one vertex set");
  }
  if (!is_acyclic(d.base)) {
    report.add("D1", {});
    return report;  // closure-based checks below assume an acyclic base
  }
  if (!is_transitive(d.base)) report.add("D1", {});
  for (const auto& [a, b] : d.residual.edges()) {
    if (a == b || d.base.has_edge(a, b) || d.base.has_edge(b, a)) {
      if (!report.add("D2", {a, b})) return report;
    }
  }
  const Digraph combined = graph_union(d.base, d.residual);
  if (!is_transitive(combined)) {
    // locate one witness triple for the report
    for (const auto& [a, b] : combined.edges()) {
      for (const auto& [b2, c] : combined.edges()) {
        if (b2 == b && a != c && !combined.has_edge(a, c)) {
          report.add("D3", {a, b, c});
          goto d3_done;
        }
      }
    }
  d3_done:;
  }
  for (const auto& [a, b] : d.base.edges()) {
    for (const auto& [b2, c] : d.residual.edges()) {
      if (b2 == b && d.residual.has_edge(a, c)) {
        if (!report.add("D4", {a, b, c})) return report;
      }
    }
  }
  for (const auto& [a, b] : d.residual.edges()) {
    for (const auto& [b2, c] : d.base.edges()) {
      if (b2 == b && d.residual.has_edge(a, c)) {
        if (!report.add("D4", {a, b, c})) return report;
      }
    }
  }
  for (const auto& [a, b] : d.slack.edges()) {
    if (a == b || !d.slack.has_edge(b, a)) {
      if (!report.add("D5", {a, b})) return report;
    }
  }
  for (const auto& [a, b] : d.slack.edges()) {
    if (combined.has_edge(a, b) || combined.has_edge(b, a)) {
      if (!report.add("D6", {a, b})) return report;
    }
  }
  return report;
}

inline GsoSpec compose_spec(const SpecDecomposition& d) {
  ValidationReport check = validate_decomposition(d);
  if (!check.empty()) {
    throw Error(ErrorKind::InvalidDecomposition,
                "condition " + to_line(*check.begin()) + " violated");
  }
  GsoSpec s;
  s.occurrences = d.base.vertices();
  s.earlier_than = d.base;
  s.not_later_than = graph_union(d.base, d.residual);
  s.nonsimultaneous = graph_union(comparability(d.base), d.slack);
  return s;
}

}  // namespace gsokit
