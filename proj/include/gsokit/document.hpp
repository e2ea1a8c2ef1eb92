#pragma once

// The one self-describing document format shared by every command: a JSON
// object with a "kind" tag ("spec", "gso-model", "psl-model",
// "observation-family") and per-kind sections. Parsing is strict - unknown
// keys, malformed ids, wrong arities, and references to undeclared ids are
// rejected - but deliberately does NOT enforce the axioms: documents must be
// able to carry invalid structures to the validators. Serialization is
// canonical (fixed key order, sorted entries, two-space indent), so equal
// values produce byte-identical documents.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gsokit/errors.hpp"
#include "gsokit/gso.hpp"
#include "gsokit/model.hpp"
#include "gsokit/observations.hpp"
#include "gsokit/psl.hpp"
#include "gsokit/relgraph.hpp"

namespace gsokit {

struct ObservationFamilyDoc {
  std::optional<NodeSet> occurrences;  // explicit carrier, if given
  std::vector<RankingStructure> members;

  NodeSet carrier() const {
    if (occurrences) return *occurrences;
    NodeSet out;
    for (const auto& r : members) {
      const NodeSet c = r.carrier();
      out.insert(c.begin(), c.end());
    }
    return out;
  }

  bool operator==(const ObservationFamilyDoc& other) const = default;
};

// A parsed document; exactly the member named by `kind` is meaningful.
struct Document {
  std::string kind;
  GsoSpec spec;
  GsoModel model;
  PslCoreModel psl;
  ObservationFamilyDoc family;

  bool operator==(const Document& other) const = default;
};

namespace detail {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

[[noreturn]] inline void doc_fail(const std::string& what) {
  throw Error(ErrorKind::ParseError, what);
}

inline bool valid_id(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!id_char(c)) return false;
  }
  return true;
}

inline std::string checked_id(const Json& j, const std::string& where) {
  if (!j.is_string()) doc_fail(where + " must be a string id");
  const std::string s = j.get<std::string>();
  if (!valid_id(s)) doc_fail(where + ": '" + s + "' is not a valid id");
  return s;
}

inline void check_keys(const Json& obj, const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) doc_fail("unknown key '" + item.key() + "'");
  }
}

// A sort section: array of distinct ids.
inline NodeSet parse_sort(const Json& obj, const std::string& key) {
  const Json& arr = obj.at(key);
  if (!arr.is_array()) doc_fail("'" + key + "' must be an array of ids");
  NodeSet out;
  for (const Json& j : arr) {
    std::string id = checked_id(j, "'" + key + "' entry");
    if (!out.insert(id).second) doc_fail("'" + key + "' lists '" + id + "' twice");
  }
  return out;
}

inline NodeId declared_id(const Json& j, const std::string& where, const NodeSet& declared) {
  std::string id = checked_id(j, where);
  if (!declared.count(id)) doc_fail(where + ": '" + id + "' is not declared");
  return id;
}

inline EdgeSet parse_pairs(const Json& obj, const std::string& key, const NodeSet& declared) {
  EdgeSet out;
  if (!obj.contains(key)) return out;
  const Json& arr = obj.at(key);
  if (!arr.is_array()) doc_fail("'" + key + "' must be an array of pairs");
  for (const Json& e : arr) {
    if (!e.is_array() || e.size() != 2) doc_fail("'" + key + "' entries must be [a, b] pairs");
    out.insert({declared_id(e[0], "'" + key + "' pair", declared),
                declared_id(e[1], "'" + key + "' pair", declared)});
  }
  return out;
}

inline TripleSet parse_triples(const Json& obj, const std::string& key,
                               const NodeSet& declared) {
  TripleSet out;
  if (!obj.contains(key)) return out;
  const Json& arr = obj.at(key);
  if (!arr.is_array()) doc_fail("'" + key + "' must be an array of triples");
  for (const Json& e : arr) {
    if (!e.is_array() || e.size() != 3) {
      doc_fail("'" + key + "' entries must be [a, b, c] triples");
    }
    out.insert({declared_id(e[0], "'" + key + "' triple", declared),
                declared_id(e[1], "'" + key + "' triple", declared),
                declared_id(e[2], "'" + key + "' triple", declared)});
  }
  return out;
}

// One ranking, either as step-sequence text or as an array of blocks.
inline RankingStructure parse_ranking(const Json& j, const std::string& where,
                                      const NodeSet& declared) {
  if (j.is_string()) {
    RankingStructure r = parse_steps(j.get<std::string>());
    for (const auto& id : r.carrier()) {
      if (!declared.count(id)) doc_fail(where + ": '" + id + "' is not declared");
    }
    return r;
  }
  if (j.is_array()) {
    std::vector<std::vector<NodeId>> blocks;
    for (const Json& b : j) {
      if (!b.is_array()) doc_fail(where + " blocks must be arrays of ids");
      std::vector<NodeId> block;
      for (const Json& id : b) block.push_back(declared_id(id, where, declared));
      blocks.push_back(std::move(block));
    }
    return RankingStructure(std::move(blocks));  // rejects empty blocks, duplicates
  }
  doc_fail(where + " must be step-sequence text or an array of blocks");
}

inline Document parse_spec_doc(const Json& obj) {
  check_keys(obj, {"kind", "occurrences", "earlier_than", "not_later_than",
                   "nonsimultaneous"});
  if (!obj.contains("occurrences")) doc_fail("spec document needs 'occurrences'");
  Document d;
  d.kind = "spec";
  const NodeSet occ = parse_sort(obj, "occurrences");
  d.spec = make_spec(occ, parse_pairs(obj, "earlier_than", occ),
                     parse_pairs(obj, "not_later_than", occ),
                     parse_pairs(obj, "nonsimultaneous", occ));
  return d;
}

inline Document parse_gso_model_doc(const Json& obj) {
  check_keys(obj, {"kind", "events", "occurrences", "observations", "occurrence_of",
                   "earlier_than", "not_later_than", "nonsimultaneous",
                   "observed_before", "observed_simult"});
  for (const char* key : {"events", "occurrences", "observations"}) {
    if (!obj.contains(key)) {
      doc_fail(std::string("gso-model document needs '") + key + "'");
    }
  }
  Document d;
  d.kind = "gso-model";
  GsoModel& m = d.model;
  m.universe.events = parse_sort(obj, "events");
  m.universe.occurrences = parse_sort(obj, "occurrences");

  // Observations come either as a plain id array (with explicit triple
  // sections) or as a map observation-id -> step-sequence text, from which
  // the triples are derived.
  const Json& obs = obj.at("observations");
  bool steps_form = obs.is_object();
  if (steps_form) {
    if (obj.contains("observed_before") || obj.contains("observed_simult")) {
      doc_fail("'observed_before'/'observed_simult' conflict with step-sequence "
               "observations");
    }
    for (const auto& item : obs.items()) {
      if (!valid_id(item.key())) {
        doc_fail("observation id '" + item.key() + "' is not a valid id");
      }
      m.universe.observations.insert(item.key());
    }
  } else {
    m.universe.observations = parse_sort(obj, "observations");
  }

  NodeSet declared = m.universe.events;
  declared.insert(m.universe.occurrences.begin(), m.universe.occurrences.end());
  declared.insert(m.universe.observations.begin(), m.universe.observations.end());

  for (const auto& [o, e] : parse_pairs(obj, "occurrence_of", declared)) {
    m.universe.occurrence_of.insert({o, e});
  }
  m.spec = make_spec(m.universe.occurrences, parse_pairs(obj, "earlier_than", declared),
                     parse_pairs(obj, "not_later_than", declared),
                     parse_pairs(obj, "nonsimultaneous", declared));

  if (steps_form) {
    for (const auto& item : obs.items()) {
      if (!item.value().is_string()) {
        doc_fail("observation '" + item.key() + "' must map to step-sequence text");
      }
      const RankingStructure r =
          parse_ranking(item.value(), "observation '" + item.key() + "'",
                        m.universe.occurrences);
      const StratOrder run = from_ranking(r);
      for (const auto& [a, b] : run.order.edges()) {
        m.observed_before.insert({a, b, item.key()});
      }
      for (const auto& block : r.blocks()) {
        for (const auto& a : block) {
          for (const auto& b : block) {
            if (a != b) m.observed_simult.insert({a, b, item.key()});
          }
        }
      }
    }
  } else {
    m.observed_before = parse_triples(obj, "observed_before", declared);
    m.observed_simult = parse_triples(obj, "observed_simult", declared);
  }
  return d;
}

inline Document parse_family_doc(const Json& obj) {
  check_keys(obj, {"kind", "occurrences", "observations"});
  if (!obj.contains("observations")) {
    doc_fail("observation-family document needs 'observations'");
  }
  Document d;
  d.kind = "observation-family";
  NodeSet declared;
  if (obj.contains("occurrences")) {
    d.family.occurrences = parse_sort(obj, "occurrences");
    declared = *d.family.occurrences;
  }
  const Json& arr = obj.at("observations");
  if (!arr.is_array()) doc_fail("'observations' must be an array of rankings");
  std::size_t index = 0;
  for (const Json& j : arr) {
    const std::string where = "observation " + std::to_string(index++);
    if (d.family.occurrences) {
      d.family.members.push_back(parse_ranking(j, where, declared));
    } else {
      // No explicit carrier: any well-formed id is acceptable.
      if (j.is_string()) {
        d.family.members.push_back(parse_steps(j.get<std::string>()));
      } else if (j.is_array()) {
        std::vector<std::vector<NodeId>> blocks;
        for (const Json& b : j) {
          if (!b.is_array()) doc_fail(where + " blocks must be arrays of ids");
          std::vector<NodeId> block;
          for (const Json& id : b) block.push_back(checked_id(id, where));
          blocks.push_back(std::move(block));
        }
        d.family.members.push_back(RankingStructure(std::move(blocks)));
      } else {
        doc_fail(where + " must be step-sequence text or an array of blocks");
      }
    }
  }
  return d;
}

inline Document parse_psl_doc(const Json& obj) {
  check_keys(obj, {"kind", "activities", "activity_occurrences", "timepoints", "objects",
                   "occurrence_of", "participates_in", "before", "exists_at"});
  for (const char* key : {"activities", "activity_occurrences", "timepoints", "objects"}) {
    if (!obj.contains(key)) {
      doc_fail(std::string("psl-model document needs '") + key + "'");
    }
  }
  Document d;
  d.kind = "psl-model";
  PslCoreModel& p = d.psl;
  p.activities = parse_sort(obj, "activities");
  p.activity_occurrences = parse_sort(obj, "activity_occurrences");
  p.timepoints = parse_sort(obj, "timepoints");
  p.objects = parse_sort(obj, "objects");
  const NodeSet declared = p.elements();
  for (const auto& pr : parse_pairs(obj, "occurrence_of", declared)) {
    p.occurrence_of.insert(pr);
  }
  for (const Triple& t : parse_triples(obj, "participates_in", declared)) {
    p.participates_in.insert(t);
  }
  p.before = Digraph(p.timepoints, parse_pairs(obj, "before", declared));
  for (const auto& pr : parse_pairs(obj, "exists_at", declared)) {
    p.exists_at.insert(pr);
  }
  return d;
}

inline OrderedJson edges_json(const EdgeSet& edges) {
  OrderedJson arr = OrderedJson::array();
  for (const auto& [a, b] : edges) arr.push_back(OrderedJson::array({a, b}));
  return arr;
}

inline OrderedJson ids_json(const NodeSet& ids) {
  OrderedJson arr = OrderedJson::array();
  for (const auto& id : ids) arr.push_back(id);
  return arr;
}

inline OrderedJson triples_json(const TripleSet& triples) {
  OrderedJson arr = OrderedJson::array();
  for (const Triple& t : triples) arr.push_back(OrderedJson::array({t[0], t[1], t[2]}));
  return arr;
}

inline std::string finish(OrderedJson& doc) { return doc.dump(2) + "\n"; }

}  // namespace detail

// Parses any of the four document kinds; throws ParseError on malformed
// input. Structure only - run the validators for axiom-level checking.
inline Document parse_document(const std::string& text) {
  detail::Json root;
  try {
    root = detail::Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!root.is_object()) detail::doc_fail("document must be a JSON object");
  if (!root.contains("kind")) detail::doc_fail("document needs a 'kind'");
  if (!root.at("kind").is_string()) detail::doc_fail("'kind' must be a string");
  const std::string kind = root.at("kind").get<std::string>();
  if (kind == "spec") return detail::parse_spec_doc(root);
  if (kind == "gso-model") return detail::parse_gso_model_doc(root);
  if (kind == "observation-family") return detail::parse_family_doc(root);
  if (kind == "psl-model") return detail::parse_psl_doc(root);
  detail::doc_fail("unknown kind '" + kind + "'");
}

// --- canonical serializers ---------------------------------------------

inline std::string serialize_spec(const GsoSpec& s) {
  detail::OrderedJson doc;
  doc["kind"] = "spec";
  doc["occurrences"] = detail::ids_json(s.occurrences);
  doc["earlier_than"] = detail::edges_json(s.earlier_than.edges());
  doc["not_later_than"] = detail::edges_json(s.not_later_than.edges());
  doc["nonsimultaneous"] = detail::edges_json(s.nonsimultaneous.edges());
  return detail::finish(doc);
}

inline std::string serialize_model(const GsoModel& m) {
  detail::OrderedJson doc;
  doc["kind"] = "gso-model";
  doc["events"] = detail::ids_json(m.universe.events);
  doc["occurrences"] = detail::ids_json(m.universe.occurrences);
  doc["observations"] = detail::ids_json(m.universe.observations);
  detail::OrderedJson of = detail::OrderedJson::array();
  for (const auto& [o, e] : m.universe.occurrence_of) {
    of.push_back(detail::OrderedJson::array({o, e}));
  }
  doc["occurrence_of"] = std::move(of);
  doc["earlier_than"] = detail::edges_json(m.spec.earlier_than.edges());
  doc["not_later_than"] = detail::edges_json(m.spec.not_later_than.edges());
  doc["nonsimultaneous"] = detail::edges_json(m.spec.nonsimultaneous.edges());
  doc["observed_before"] = detail::triples_json(m.observed_before);
  doc["observed_simult"] = detail::triples_json(m.observed_simult);
  return detail::finish(doc);
}

inline std::string serialize_family(const ObservationFamilyDoc& f) {
  detail::OrderedJson doc;
  doc["kind"] = "observation-family";
  if (f.occurrences) doc["occurrences"] = detail::ids_json(*f.occurrences);
  detail::OrderedJson arr = detail::OrderedJson::array();
  for (const auto& r : f.members) arr.push_back(render_steps(r));
  doc["observations"] = std::move(arr);
  return detail::finish(doc);
}

inline std::string serialize_psl(const PslCoreModel& p) {
  detail::OrderedJson doc;
  doc["kind"] = "psl-model";
  doc["activities"] = detail::ids_json(p.activities);
  doc["activity_occurrences"] = detail::ids_json(p.activity_occurrences);
  doc["timepoints"] = detail::ids_json(p.timepoints);
  doc["objects"] = detail::ids_json(p.objects);
  detail::OrderedJson of = detail::OrderedJson::array();
  for (const auto& [o, a] : p.occurrence_of) {
    of.push_back(detail::OrderedJson::array({o, a}));
  }
  doc["occurrence_of"] = std::move(of);
  doc["participates_in"] = detail::triples_json(p.participates_in);
  doc["before"] = detail::edges_json(p.before.edges());
  detail::OrderedJson ex = detail::OrderedJson::array();
  for (const auto& [x, t] : p.exists_at) {
    ex.push_back(detail::OrderedJson::array({x, t}));
  }
  doc["exists_at"] = std::move(ex);
  return detail::finish(doc);
}

inline std::string serialize_document(const Document& d) {
  if (d.kind == "spec") return serialize_spec(d.spec);
  if (d.kind == "gso-model") return serialize_model(d.model);
  if (d.kind == "observation-family") return serialize_family(d.family);
  if (d.kind == "psl-model") return serialize_psl(d.psl);
  throw Error(ErrorKind::ParseError, "unknown kind '" + d.kind + "'");
}

// Classification output (emit-only; not one of the parseable kinds).
inline std::string serialize_classification(const ClassificationData& c) {
  detail::OrderedJson doc;
  doc["kind"] = "classification";
  detail::OrderedJson part = detail::OrderedJson::array();
  for (const auto& block : c.event_partition) part.push_back(detail::ids_json(block));
  doc["event_partition"] = std::move(part);
  doc["base"] = detail::edges_json(c.decomposition.base.edges());
  doc["residual"] = detail::edges_json(c.decomposition.residual.edges());
  doc["slack"] = detail::edges_json(c.decomposition.slack.edges());
  detail::OrderedJson family = detail::OrderedJson::object();
  for (const auto& [obs, r] : c.ranking_family) family[obs] = render_steps(r);
  doc["ranking_family"] = std::move(family);
  return detail::finish(doc);
}

}  // namespace gsokit
