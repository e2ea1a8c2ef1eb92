#pragma once

// Finite first-order models of the full theory: a three-sorted universe, an
// order spec over the occurrence sort, and two observation-indexed ternary
// relations. check_axioms evaluates the chosen theory by exhaustive
// substitution; classify/build_model realize the equivalence between models
// and their combinatorial classification data (event partition + spec
// decomposition + ranking family), which the round-trip tests exercise in
// both directions.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gsokit/errors.hpp"
#include "gsokit/gso.hpp"
#include "gsokit/observations.hpp"
#include "gsokit/relgraph.hpp"
#include "gsokit/validation.hpp"

namespace gsokit {

// One observed-before or observed-simultaneously fact: (first, second,
// observation).
using Triple = std::array<NodeId, 3>;
using TripleSet = std::set<Triple>;

struct GsoModel {
  Universe universe;
  GsoSpec spec;                // relations on universe.occurrences
  TripleSet observed_before;   // (a,b,o): a seen strictly before b under o
  TripleSet observed_simult;   // (a,b,o): a seen simultaneous with b under o

  bool operator==(const GsoModel& other) const = default;
};

// The four checkable theories:
//   Univ      sort structure only (E1-E5)
//   Spec      order axioms only (GSO1-GSO9)
//   Gso       the full theory (E*, GSO*, O*)
//   GsoMinus  the two-sorted variant (GSO*, O*, EX1-EX2; no events)
enum class Theory { Univ, Spec, Gso, GsoMinus };

inline std::string theory_name(Theory t) {
  switch (t) {
    case Theory::Univ: return "univ";
    case Theory::Spec: return "spec";
    case Theory::Gso: return "gso";
    case Theory::GsoMinus: return "gso-minus";
  }
  return "?";
}

namespace detail {

// O1-O10 over a finite model. Quantifiers whose literal unguarded reading
// would make the axioms jointly unsatisfiable on any nontrivial universe are
// evaluated sort-guarded: the pair variables of O5, O9, O10 range over the
// occurrence sort (O9/O10 over distinct pairs), and the inner observation
// variable of O5, O7, O8 ranges over the observation sort. Everything else
// is trigger-driven off the stored triples, which is equivalent to
// exhaustive substitution for implications whose premises are atoms.
inline ValidationReport check_observation_axioms(const GsoModel& m, std::size_t cap) {
  ValidationReport report(cap);
  const Universe& u = m.universe;
  const TripleSet& ob = m.observed_before;
  const TripleSet& os = m.observed_simult;

  // O1/O2: the triples relate two occurrences and an observation.
  for (const Triple& t : ob) {
    if (!u.occurrences.count(t[0]) || !u.occurrences.count(t[1]) ||
        !u.observations.count(t[2])) {
      if (!report.add("O1", {t[0], t[1], t[2]})) return report;
    }
  }
  for (const Triple& t : os) {
    if (!u.occurrences.count(t[0]) || !u.occurrences.count(t[1]) ||
        !u.observations.count(t[2])) {
      if (!report.add("O2", {t[0], t[1], t[2]})) return report;
    }
  }

  // O3: nothing is observed before itself.
  for (const Triple& t : ob) {
    if (t[0] == t[1]) {
      if (!report.add("O3", {t[0], t[2]})) return report;
    }
  }

  // O4: observed-before is transitive per observation.
  std::map<NodeId, std::map<NodeId, NodeSet>> badj;  // obs -> a -> successors
  for (const Triple& t : ob) badj[t[2]][t[0]].insert(t[1]);
  for (const auto& [o, adj] : badj) {
    for (const auto& [a, outs] : adj) {
      for (const auto& b : outs) {
        auto k = adj.find(b);
        if (k == adj.end()) continue;
        for (const auto& c : k->second) {
          if (!outs.count(c)) {
            if (!report.add("O4", {a, b, c, o})) return report;
          }
        }
      }
    }
  }

  // O5: simultaneity is definitionally mutual unorderedness of distinct
  // occurrences, per observation (both directions of the equivalence).
  for (const auto& o : u.observations) {
    for (const auto& a : u.occurrences) {
      for (const auto& b : u.occurrences) {
        bool lhs = a != b && !ob.count({a, b, o}) && !ob.count({b, a, o});
        bool rhs = os.count({a, b, o}) > 0;
        if (lhs != rhs) {
          if (!report.add("O5", {a, b, o})) return report;
        }
      }
    }
  }

  // O6: simultaneity is weakly transitive per observation.
  std::map<NodeId, std::map<NodeId, NodeSet>> sadj;
  for (const Triple& t : os) sadj[t[2]][t[0]].insert(t[1]);
  for (const auto& [o, adj] : sadj) {
    for (const auto& [a, outs] : adj) {
      for (const auto& b : outs) {
        auto k = adj.find(b);
        if (k == adj.end()) continue;
        for (const auto& c : k->second) {
          if (a != c && !os.count({a, c, o})) {
            if (!report.add("O6", {a, b, c, o})) return report;
          }
        }
      }
    }
  }

  // O7: every observation orders every nonsimultaneous pair.
  for (const auto& [a, b] : m.spec.nonsimultaneous.edges()) {
    for (const auto& o : u.observations) {
      if (!ob.count({a, b, o}) && !ob.count({b, a, o})) {
        if (!report.add("O7", {a, b, o})) return report;
      }
    }
  }

  // O8: no observation reverses a not-later-than pair.
  for (const auto& [a, b] : m.spec.not_later_than.edges()) {
    for (const auto& o : u.observations) {
      if (!ob.count({a, b, o}) && !os.count({a, b, o})) {
        if (!report.add("O8", {a, b, o})) return report;
      }
    }
  }

  // O9/O10: every freedom the spec leaves open is witnessed by some
  // observation. The existential is over stored triples.
  std::set<Edge> simult_pairs, before_pairs;
  for (const Triple& t : os) simult_pairs.insert({t[0], t[1]});
  for (const Triple& t : ob) before_pairs.insert({t[0], t[1]});
  for (const auto& a : u.occurrences) {
    for (const auto& b : u.occurrences) {
      if (a == b || m.spec.nonsimultaneous.has_edge(a, b)) continue;
      if (!simult_pairs.count({a, b})) {
        if (!report.add("O9", {a, b})) return report;
      }
    }
  }
  for (const auto& a : u.occurrences) {
    for (const auto& b : u.occurrences) {
      if (a == b || m.spec.not_later_than.has_edge(a, b)) continue;
      if (!before_pairs.count({b, a})) {
        if (!report.add("O10", {a, b})) return report;
      }
    }
  }
  return report;
}

}  // namespace detail

// Evaluates every axiom of the theory on the model; empty report iff the
// model satisfies it. Deterministic: axioms in theory order, witnesses in
// container order. Throws SizeLimit beyond 50 elements per sort.
inline ValidationReport check_axioms(const GsoModel& m, Theory theory,
                                     std::size_t cap = 100) {
  constexpr std::size_t kMaxSort = 50;
  if (m.universe.events.size() > kMaxSort || m.universe.occurrences.size() > kMaxSort ||
      m.universe.observations.size() > kMaxSort) {
    throw Error(ErrorKind::SizeLimit, "model exceeds 50 elements per sort");
  }
  ValidationReport report(cap);
  auto merge = [&](const ValidationReport& sub) {
    for (const auto& v : sub) {
      if (!report.add(v.axiom, v.witness)) return false;
    }
    if (sub.truncated()) report.mark_truncated();
    return true;
  };

  if (theory == Theory::Univ || theory == Theory::Gso) {
    if (!merge(validate_universe(m.universe, cap))) return report;
  }
  if (theory != Theory::Univ) {
    // Rebuild on the declared occurrence sort so stray relation endpoints
    // (events, observations, undeclared ids) surface as field violations.
    GsoSpec eval = make_spec(m.universe.occurrences, m.spec.earlier_than.edges(),
                             m.spec.not_later_than.edges(),
                             m.spec.nonsimultaneous.edges());
    if (!merge(validate_spec(eval, cap))) return report;
  }
  if (theory == Theory::Gso || theory == Theory::GsoMinus) {
    if (!merge(detail::check_observation_axioms(m, cap))) return report;
  }
  if (theory == Theory::GsoMinus) {
    for (const auto& x : m.universe.elements()) {
      if (!m.universe.occurrences.count(x) && !m.universe.observations.count(x)) {
        if (!report.add("EX1", {x})) return report;
      }
    }
    for (const auto& x : m.universe.occurrences) {
      if (m.universe.observations.count(x)) {
        if (!report.add("EX2", {x})) return report;
      }
    }
  }
  return report;
}

// The canonical 7-occurrence, 2-observation model: the running example's
// spec, each occurrence its own event, and the two runs
// {o1}{o2}{o3}{o4}{o5,o6,o7} and {o1}{o3}{o2}{o4}{o5}{o6,o7} as the
// observation set. Satisfies the full theory; the consistency tests pin it.
inline GsoModel witness_model() {
  GsoModel m;
  for (int i = 1; i <= 7; ++i) {
    const std::string o = "o" + std::to_string(i);
    const std::string e = "e" + std::to_string(i);
    m.universe.events.insert(e);
    m.universe.occurrences.insert(o);
    m.universe.occurrence_of.insert({o, e});
  }
  m.universe.observations = {"ob_a", "ob_d"};

  Digraph et = transitive_closure(Digraph(m.universe.occurrences,
                                          {{"o1", "o2"},
                                           {"o1", "o3"},
                                           {"o2", "o4"},
                                           {"o3", "o4"},
                                           {"o4", "o5"},
                                           {"o4", "o6"},
                                           {"o4", "o7"}}));
  Digraph nlt = et;
  for (const auto& [a, b] :
       EdgeSet{{"o5", "o6"}, {"o5", "o7"}, {"o6", "o7"}, {"o7", "o6"}}) {
    nlt.add_edge(a, b);
  }
  UGraph ns = comparability(et);
  ns.add_edge("o2", "o3");
  ns.add_edge("o3", "o2");
  m.spec = GsoSpec{m.universe.occurrences, et, nlt, ns};

  auto add_run = [&m](const std::string& steps, const NodeId& obs) {
    const RankingStructure r = parse_steps(steps);
    const StratOrder run = from_ranking(r);
    for (const auto& [a, b] : run.order.edges()) {
      m.observed_before.insert({a, b, obs});
    }
    for (const auto& block : r.blocks()) {
      for (const auto& a : block) {
        for (const auto& b : block) {
          if (a != b) m.observed_simult.insert({a, b, obs});
        }
      }
    }
  };
  add_run("{o1}{o2}{o3}{o4}{o5,o6,o7}", "ob_a");
  add_run("{o1}{o3}{o2}{o4}{o5}{o6,o7}", "ob_d");
  return m;
}

// The run one observation saw: the observed-before pairs under obs, as a
// relation on the occurrence sort.
inline StratOrder project_observation(const GsoModel& m, const NodeId& obs) {
  if (!m.universe.observations.count(obs)) {
    throw Error(ErrorKind::UnknownObservation, "'" + obs + "' is not an observation");
  }
  Digraph order(m.universe.occurrences);
  for (const Triple& t : m.observed_before) {
    if (t[2] == obs) order.add_edge(t[0], t[1]);
  }
  return StratOrder(std::move(order));
}

// ---------------------------------------------------------------------------
// Classification: the combinatorial normal form of a model of the full
// theory. Carrying the same information both ways:
//   event_partition  occurrence fibers of the (occurrence-bearing) events
//   decomposition    base/residual/slack of the spec
//   ranking_family   each observation's run as a ranking

struct ClassificationData {
  std::set<NodeSet> event_partition;
  SpecDecomposition decomposition;
  std::map<NodeId, RankingStructure> ranking_family;

  bool operator==(const ClassificationData& other) const = default;
};

// Model -> classification data. Events without occurrences are dropped (the
// partition has no empty classes); everything else is preserved exactly.
inline ClassificationData classify(const GsoModel& m) {
  ValidationReport check = check_axioms(m, Theory::Gso);
  if (!check.empty()) {
    throw Error(ErrorKind::NotAModel, to_line(*check.begin()));
  }
  ClassificationData d;
  for (const auto& e : m.universe.events) {
    NodeSet fiber;
    for (const auto& [o, ee] : m.universe.occurrence_of) {
      if (ee == e) fiber.insert(o);
    }
    if (!fiber.empty()) d.event_partition.insert(std::move(fiber));
  }
  d.decomposition = decompose_spec(make_spec(
      m.universe.occurrences, m.spec.earlier_than.edges(),
      m.spec.not_later_than.edges(), m.spec.nonsimultaneous.edges()));
  for (const auto& obs : m.universe.observations) {
    d.ranking_family.emplace(obs, to_ranking(project_observation(m, obs)));
  }
  return d;
}

// Classification data -> model. Checks every invariant of the data before
// building:
//   (1) event_partition is a partition of the occurrence set
//   (2) the decomposition satisfies its six conditions
//   (3) not_later_than equals the meet of the rankings' step-saturated graphs
//   (4) nonsimultaneous equals the meet of the rankings' comparability graphs
// (meets over an empty family are the complete graph). Event ids are fresh
// ("e1", "e2", ... per partition-class order, suffixed on collision).
inline GsoModel build_model(const ClassificationData& d) {
  const NodeSet occ = d.decomposition.base.vertices();

  NodeSet covered;
  for (const auto& block : d.event_partition) {
    if (block.empty()) {
      throw Error(ErrorKind::InvalidClassificationData,
                  "condition (1): event class is empty");
    }
    for (const auto& o : block) {
      if (!occ.count(o)) {
        throw Error(ErrorKind::InvalidClassificationData,
                    "condition (1): event class member '" + o + "' is not an occurrence");
      }
      if (!covered.insert(o).second) {
        throw Error(ErrorKind::InvalidClassificationData,
                    "condition (1): '" + o + "' lies in two event classes");
      }
    }
  }
  if (covered != occ) {
    for (const auto& o : occ) {
      if (!covered.count(o)) {
        throw Error(ErrorKind::InvalidClassificationData,
                    "condition (1): '" + o + "' lies in no event class");
      }
    }
  }

  ValidationReport dec = validate_decomposition(d.decomposition);
  if (!dec.empty()) {
    throw Error(ErrorKind::InvalidClassificationData,
                "condition (2): decomposition violates " + to_line(*dec.begin()));
  }
  const GsoSpec spec = compose_spec(d.decomposition);

  for (const auto& [obs, r] : d.ranking_family) {
    if (r.carrier() != occ) {
      throw Error(ErrorKind::InvalidClassificationData,
                  "ranking for '" + obs + "' is not on the occurrence set");
    }
  }
  Digraph nlt_meet = complete_graph(occ);
  Digraph ns_meet = complete_graph(occ);
  for (const auto& [obs, r] : d.ranking_family) {
    const StratOrder s = from_ranking(r);
    nlt_meet = graph_intersection(nlt_meet, frown_order(s));
    ns_meet = graph_intersection(ns_meet, comparability(s.order));
  }
  if (nlt_meet != spec.not_later_than) {
    throw Error(ErrorKind::InvalidClassificationData,
                "condition (3): not_later_than is not the meet of the rankings");
  }
  if (ns_meet != spec.nonsimultaneous) {
    throw Error(ErrorKind::InvalidClassificationData,
                "condition (4): nonsimultaneous is not the meet of the rankings");
  }

  GsoModel m;
  m.universe.occurrences = occ;
  for (const auto& [obs, r] : d.ranking_family) m.universe.observations.insert(obs);
  NodeSet used = occ;
  used.insert(m.universe.observations.begin(), m.universe.observations.end());
  std::size_t counter = 1;
  for (const auto& block : d.event_partition) {
    std::string e = "e" + std::to_string(counter++);
    while (used.count(e)) e += "_";
    used.insert(e);
    m.universe.events.insert(e);
    for (const auto& o : block) m.universe.occurrence_of.insert({o, e});
  }
  m.spec = spec;
  for (const auto& [obs, r] : d.ranking_family) {
    const StratOrder run = from_ranking(r);
    for (const auto& [a, b] : run.order.edges()) {
      m.observed_before.insert({a, b, obs});
    }
    for (const auto& block : r.blocks()) {
      for (const auto& a : block) {
        for (const auto& b : block) {
          if (a != b) m.observed_simult.insert({a, b, obs});
        }
      }
    }
  }
  return m;
}

namespace detail {

// Isomorphism is defined over well-sorted content; relation entries that
// mention undeclared or wrongly-sorted ids (which the validators flag) are
// dropped before comparison so the relation is reflexive on any input.
inline GsoModel drop_unsorted(const GsoModel& m) {
  GsoModel out;
  out.universe.events = m.universe.events;
  out.universe.occurrences = m.universe.occurrences;
  out.universe.observations = m.universe.observations;
  const NodeSet& occ = out.universe.occurrences;
  for (const auto& [o, e] : m.universe.occurrence_of) {
    if (occ.count(o) && out.universe.events.count(e)) {
      out.universe.occurrence_of.insert({o, e});
    }
  }
  auto keep = [&occ](const Digraph& g) {
    Digraph r(occ);
    for (const auto& [a, b] : g.edges()) {
      if (occ.count(a) && occ.count(b)) r.add_edge(a, b);
    }
    return r;
  };
  out.spec.occurrences = occ;
  out.spec.earlier_than = keep(m.spec.earlier_than);
  out.spec.not_later_than = keep(m.spec.not_later_than);
  out.spec.nonsimultaneous = keep(m.spec.nonsimultaneous);
  for (const TripleSet* in : {&m.observed_before, &m.observed_simult}) {
    TripleSet& to = in == &m.observed_before ? out.observed_before : out.observed_simult;
    for (const Triple& t : *in) {
      if (occ.count(t[0]) && occ.count(t[1]) && out.universe.observations.count(t[2])) {
        to.insert(t);
      }
    }
  }
  return out;
}

// Per-occurrence structural signature; mapped occurrences must agree on it.
struct OccSignature {
  std::size_t et_out = 0, et_in = 0, nlt_out = 0, nlt_in = 0, ns_deg = 0;
  std::size_t fiber_size = 0;  // size of its event class (0 = unassigned)
  std::vector<std::array<std::size_t, 3>> obs_degrees;  // sorted per-obs (b_out,b_in,s_deg)

  bool operator==(const OccSignature& other) const = default;
};

inline std::map<NodeId, OccSignature> occurrence_signatures(const GsoModel& m) {
  std::map<NodeId, OccSignature> sig;
  for (const auto& o : m.universe.occurrences) sig[o];
  auto bump = [&](const NodeId& x, std::size_t OccSignature::* field) {
    auto it = sig.find(x);
    if (it != sig.end()) ++(it->second.*field);
  };
  for (const auto& [a, b] : m.spec.earlier_than.edges()) {
    bump(a, &OccSignature::et_out);
    bump(b, &OccSignature::et_in);
  }
  for (const auto& [a, b] : m.spec.not_later_than.edges()) {
    bump(a, &OccSignature::nlt_out);
    bump(b, &OccSignature::nlt_in);
  }
  for (const auto& [a, b] : m.spec.nonsimultaneous.edges()) bump(a, &OccSignature::ns_deg);

  std::map<NodeId, std::map<NodeId, std::array<std::size_t, 3>>> per_obs;
  for (const Triple& t : m.observed_before) {
    ++per_obs[t[0]][t[2]][0];
    ++per_obs[t[1]][t[2]][1];
  }
  for (const Triple& t : m.observed_simult) ++per_obs[t[0]][t[2]][2];
  for (auto& [o, s] : sig) {
    auto it = per_obs.find(o);
    if (it != per_obs.end()) {
      for (const auto& [obs, deg] : it->second) s.obs_degrees.push_back(deg);
      std::sort(s.obs_degrees.begin(), s.obs_degrees.end());
    }
  }
  std::map<NodeId, std::size_t> fiber;
  for (const auto& [o, e] : m.universe.occurrence_of) {
    if (m.universe.occurrences.count(o)) ++fiber[e];
  }
  for (const auto& [o, e] : m.universe.occurrence_of) {
    auto it = sig.find(o);
    if (it != sig.end()) it->second.fiber_size = fiber[e];
  }
  return sig;
}

}  // namespace detail

// Sort-preserving isomorphism on the sorted part of two finite models:
// searches for an occurrence bijection preserving all three spec relations,
// under which the observations match up to relabeling (identical induced
// relation pairs) and the event fibers match as multisets. Throws SizeLimit
// beyond 12 elements in any sort.
inline bool isomorphic(const GsoModel& raw1, const GsoModel& raw2) {
  constexpr std::size_t kMax = 12;
  for (const GsoModel* m : {&raw1, &raw2}) {
    if (m->universe.events.size() > kMax || m->universe.occurrences.size() > kMax ||
        m->universe.observations.size() > kMax) {
      throw Error(ErrorKind::SizeLimit, "isomorphism search beyond 12 elements per sort");
    }
  }
  const GsoModel m1 = detail::drop_unsorted(raw1);
  const GsoModel m2 = detail::drop_unsorted(raw2);
  if (m1.universe.events.size() != m2.universe.events.size() ||
      m1.universe.occurrences.size() != m2.universe.occurrences.size() ||
      m1.universe.observations.size() != m2.universe.observations.size() ||
      m1.spec.earlier_than.edges().size() != m2.spec.earlier_than.edges().size() ||
      m1.spec.not_later_than.edges().size() != m2.spec.not_later_than.edges().size() ||
      m1.spec.nonsimultaneous.edges().size() != m2.spec.nonsimultaneous.edges().size() ||
      m1.observed_before.size() != m2.observed_before.size() ||
      m1.observed_simult.size() != m2.observed_simult.size()) {
    return false;
  }

  const auto sig1 = detail::occurrence_signatures(m1);
  const auto sig2 = detail::occurrence_signatures(m2);
  const std::vector<NodeId> occ1(m1.universe.occurrences.begin(),
                                 m1.universe.occurrences.end());
  const std::vector<NodeId> occ2(m2.universe.occurrences.begin(),
                                 m2.universe.occurrences.end());

  std::map<NodeId, NodeId> fwd;
  std::set<NodeId> taken;

  auto edges_consistent = [&](const NodeId& a, const NodeId& b) {
    // a (in m1) just mapped to b (in m2): check all relations against the
    // already-mapped occurrences, both directions.
    for (const auto& [x, y] : fwd) {
      const Digraph* g1[3] = {&m1.spec.earlier_than, &m1.spec.not_later_than,
                              &m1.spec.nonsimultaneous};
      const Digraph* g2[3] = {&m2.spec.earlier_than, &m2.spec.not_later_than,
                              &m2.spec.nonsimultaneous};
      for (int i = 0; i < 3; ++i) {
        if (g1[i]->has_edge(a, x) != g2[i]->has_edge(b, y)) return false;
        if (g1[i]->has_edge(x, a) != g2[i]->has_edge(y, b)) return false;
      }
    }
    return true;
  };

  auto relations_match = [&]() {
    // Observations match iff the multisets of mapped relation pairs agree.
    std::map<NodeId, std::pair<EdgeSet, EdgeSet>> rel1, rel2;
    for (const auto& o : m1.universe.observations) rel1[o];
    for (const auto& o : m2.universe.observations) rel2[o];
    for (const Triple& t : m1.observed_before) {
      auto it = rel1.find(t[2]);
      auto a = fwd.find(t[0]);
      auto b = fwd.find(t[1]);
      if (it == rel1.end() || a == fwd.end() || b == fwd.end()) return false;
      it->second.first.insert({a->second, b->second});
    }
    for (const Triple& t : m1.observed_simult) {
      auto it = rel1.find(t[2]);
      auto a = fwd.find(t[0]);
      auto b = fwd.find(t[1]);
      if (it == rel1.end() || a == fwd.end() || b == fwd.end()) return false;
      it->second.second.insert({a->second, b->second});
    }
    for (const Triple& t : m2.observed_before) {
      auto it = rel2.find(t[2]);
      if (it == rel2.end() || !m2.universe.occurrences.count(t[0]) ||
          !m2.universe.occurrences.count(t[1])) {
        return false;
      }
      it->second.first.insert({t[0], t[1]});
    }
    for (const Triple& t : m2.observed_simult) {
      auto it = rel2.find(t[2]);
      if (it == rel2.end() || !m2.universe.occurrences.count(t[0]) ||
          !m2.universe.occurrences.count(t[1])) {
        return false;
      }
      it->second.second.insert({t[0], t[1]});
    }
    std::multiset<std::pair<EdgeSet, EdgeSet>> bag1, bag2;
    for (auto& [o, r] : rel1) bag1.insert(std::move(r));
    for (auto& [o, r] : rel2) bag2.insert(std::move(r));
    if (bag1 != bag2) return false;

    // Event fibers match as multisets of occurrence sets (after mapping).
    std::map<NodeId, NodeSet> f1, f2;
    for (const auto& e : m1.universe.events) f1[e];
    for (const auto& e : m2.universe.events) f2[e];
    for (const auto& [o, e] : m1.universe.occurrence_of) {
      auto it = f1.find(e);
      auto a = fwd.find(o);
      if (it == f1.end() || a == fwd.end()) return false;
      it->second.insert(a->second);
    }
    for (const auto& [o, e] : m2.universe.occurrence_of) {
      auto it = f2.find(e);
      if (it == f2.end() || !m2.universe.occurrences.count(o)) return false;
      it->second.insert(o);
    }
    std::multiset<NodeSet> fibers1, fibers2;
    for (auto& [e, f] : f1) fibers1.insert(std::move(f));
    for (auto& [e, f] : f2) fibers2.insert(std::move(f));
    return fibers1 == fibers2;
  };

  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == occ1.size()) return relations_match();
    const NodeId& a = occ1[i];
    for (const NodeId& b : occ2) {
      if (taken.count(b) || !(sig1.at(a) == sig2.at(b)) || !edges_consistent(a, b)) {
        continue;
      }
      fwd.emplace(a, b);
      taken.insert(b);
      if (self(self, i + 1)) return true;
      fwd.erase(a);
      taken.erase(b);
    }
    return false;
  };
  return search(search, 0);
}

}  // namespace gsokit
