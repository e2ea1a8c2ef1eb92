#pragma once

// A minimal process-ontology fragment (activities, activity occurrences,
// timepoints, objects, a timeline) and the relative interpretation of the
// two-sorted observation theory into it. Observers are objects that exist at
// every timepoint and participate in exactly one occurrence of each activity
// at exactly one timepoint; translation reads each observer as one
// observation whose run is given by its participation times on the timeline.
//
// Two clauses of the source interpretation are repaired to match the target
// axioms (see the repository notes): not-later-than uses the
// before-or-same-time disjunction, and the second disjunct of
// nonsimultaneous is bound to observed-before in the reverse direction.
// With zero observers every derived relation is empty.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gsokit/errors.hpp"
#include "gsokit/gso.hpp"
#include "gsokit/model.hpp"
#include "gsokit/relgraph.hpp"
#include "gsokit/validation.hpp"

namespace gsokit {

struct PslCoreModel {
  NodeSet activities;
  NodeSet activity_occurrences;
  NodeSet timepoints;
  NodeSet objects;
  std::set<std::pair<NodeId, NodeId>> occurrence_of;  // (activity occurrence, activity)
  std::set<Triple> participates_in;                   // (object, activity occurrence, timepoint)
  Digraph before;                                     // strict total order on timepoints
  std::set<std::pair<NodeId, NodeId>> exists_at;      // (object, timepoint)

  bool operator==(const PslCoreModel& other) const = default;

  NodeSet elements() const {
    NodeSet out = activities;
    out.insert(activity_occurrences.begin(), activity_occurrences.end());
    out.insert(timepoints.begin(), timepoints.end());
    out.insert(objects.begin(), objects.end());
    return out;
  }
};

// Well-formedness conditions:
//   PSL1  the four sorts are pairwise disjoint
//   PSL2  before is a strict total order on the timepoints
//   PSL3  occurrence_of is total and single-valued on activity occurrences
//   PSL4  every relation entry is well-sorted
inline ValidationReport is_well_formed(const PslCoreModel& p, std::size_t cap = 100) {
  ValidationReport report(cap);

  for (const auto& x : p.elements()) {
    int sorts = (p.activities.count(x) ? 1 : 0) + (p.activity_occurrences.count(x) ? 1 : 0) +
                (p.timepoints.count(x) ? 1 : 0) + (p.objects.count(x) ? 1 : 0);
    if (sorts > 1) {
      if (!report.add("PSL1", {x})) return report;
    }
  }

  for (const auto& t : p.timepoints) {
    if (p.before.has_edge(t, t)) {
      if (!report.add("PSL2", {t})) return report;
    }
  }
  for (const auto& [t1, t2] : p.before.edges()) {
    for (const auto& [t2b, t3] : p.before.edges()) {
      if (t2b == t2 && !p.before.has_edge(t1, t3)) {
        if (!report.add("PSL2", {t1, t2, t3})) return report;
      }
    }
  }
  for (const auto& t1 : p.timepoints) {
    for (const auto& t2 : p.timepoints) {
      if (t1 < t2 && !p.before.has_edge(t1, t2) && !p.before.has_edge(t2, t1)) {
        if (!report.add("PSL2", {t1, t2})) return report;
      }
    }
  }

  for (const auto& ao : p.activity_occurrences) {
    std::vector<NodeId> targets;
    for (const auto& [o, a] : p.occurrence_of) {
      if (o == ao) targets.push_back(a);
    }
    if (targets.empty()) {
      if (!report.add("PSL3", {ao})) return report;
    } else if (targets.size() > 1) {
      if (!report.add("PSL3", {ao, targets[0], targets[1]})) return report;
    }
  }

  for (const auto& [o, a] : p.occurrence_of) {
    if (!p.activity_occurrences.count(o) || !p.activities.count(a)) {
      if (!report.add("PSL4", {o, a})) return report;
    }
  }
  for (const Triple& t : p.participates_in) {
    if (!p.objects.count(t[0]) || !p.activity_occurrences.count(t[1]) ||
        !p.timepoints.count(t[2])) {
      if (!report.add("PSL4", {t[0], t[1], t[2]})) return report;
    }
  }
  for (const auto& [t1, t2] : p.before.edges()) {
    if (!p.timepoints.count(t1) || !p.timepoints.count(t2)) {
      if (!report.add("PSL4", {t1, t2})) return report;
    }
  }
  for (const auto& [x, t] : p.exists_at) {
    if (!p.objects.count(x) || !p.timepoints.count(t)) {
      if (!report.add("PSL4", {x, t})) return report;
    }
  }
  return report;
}

namespace detail {

// If x qualifies as an observer, the map activity -> the timepoint at which
// x observes it; nullopt otherwise. Qualifying means: x exists at every
// timepoint, and for each activity exactly one of its occurrences carries
// exactly one participation of x (that occurrence's unique participation
// time is the observation time; other occurrences of the activity are
// ignored per the uniqueness quantifier).
inline std::optional<std::map<NodeId, NodeId>> observation_times(const PslCoreModel& p,
                                                                 const NodeId& x) {
  for (const auto& t : p.timepoints) {
    if (!p.exists_at.count({x, t})) return std::nullopt;
  }
  std::map<NodeId, std::vector<NodeId>> part;  // activity occurrence -> times of x
  for (const Triple& t : p.participates_in) {
    if (t[0] == x) part[t[1]].push_back(t[2]);
  }
  std::map<NodeId, NodeId> times;
  for (const auto& a : p.activities) {
    std::vector<NodeId> unique_times;
    for (const auto& [o, aa] : p.occurrence_of) {
      if (aa != a) continue;
      auto it = part.find(o);
      if (it != part.end() && it->second.size() == 1) unique_times.push_back(it->second[0]);
    }
    if (unique_times.size() != 1) return std::nullopt;
    times.emplace(a, unique_times[0]);
  }
  return times;
}

}  // namespace detail

// All observer objects of p.
inline NodeSet observers(const PslCoreModel& p) {
  NodeSet out;
  for (const auto& x : p.objects) {
    if (detail::observation_times(p, x)) out.insert(x);
  }
  return out;
}

struct TranslationResult {
  GsoModel model;                          // two-sorted: events empty
  std::map<NodeId, NodeId> observer_map;   // observation id -> observer object id

  bool operator==(const TranslationResult& other) const = default;
};

// The relative interpretation: activities become occurrences, observers
// become observations, and the three order relations are the universally-
// quantified conditions over all observers' timelines (strictly before /
// before-or-same-time / never-same-time). Inherits the source sorts'
// disjointness, so observation ids are the observer object ids themselves.
inline TranslationResult translate(const PslCoreModel& p) {
  TranslationResult r;
  GsoModel& m = r.model;
  m.universe.occurrences = p.activities;

  std::map<NodeId, std::map<NodeId, NodeId>> times;  // observer -> activity -> timepoint
  for (const auto& x : p.objects) {
    auto t = detail::observation_times(p, x);
    if (t) {
      m.universe.observations.insert(x);
      r.observer_map.emplace(x, x);
      times.emplace(x, std::move(*t));
    }
  }

  for (const auto& [x, at] : times) {
    for (const auto& [a1, t1] : at) {
      for (const auto& [a2, t2] : at) {
        if (p.before.has_edge(t1, t2)) {
          m.observed_before.insert({a1, a2, x});
        } else if (a1 != a2 && t1 == t2) {
          m.observed_simult.insert({a1, a2, x});
        }
      }
    }
  }

  EdgeSet et, nlt, ns;
  if (!times.empty()) {
    for (const auto& a1 : p.activities) {
      for (const auto& a2 : p.activities) {
        if (a1 == a2) continue;
        bool all_before = true, all_weak = true, never_same = true;
        for (const auto& [x, at] : times) {
          const NodeId& t1 = at.at(a1);
          const NodeId& t2 = at.at(a2);
          const bool strictly = p.before.has_edge(t1, t2);
          all_before = all_before && strictly;
          all_weak = all_weak && (strictly || t1 == t2);
          never_same = never_same && t1 != t2;
        }
        if (all_before) et.insert({a1, a2});
        if (all_weak) nlt.insert({a1, a2});
        if (never_same) ns.insert({a1, a2});
      }
    }
  }
  m.spec = make_spec(p.activities, et, nlt, ns);
  return r;
}

// Checks the translated model against the two-sorted theory; an empty report
// is a finite-instance confirmation that the interpretation is correct.
inline ValidationReport verify_interpretation(const PslCoreModel& p, std::size_t cap = 100) {
  return check_axioms(translate(p).model, Theory::GsoMinus, cap);
}

}  // namespace gsokit
