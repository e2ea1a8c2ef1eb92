// Universe and spec axioms, the derived propositions, and the
// base/residual/slack decomposition. Each axiom gets a dedicated violating
// fixture with its exact witness; validity of generated specs is asserted,
// never assumed.

#include <random>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include <gsokit/gso.hpp>
#include <gsokit/model.hpp>

#include "catch_util.hpp"
#include "generators.hpp"

using namespace gsokit;
using testutil::error_kind_of;
using testutil::id_range;
using testutil::random_dag;
using testutil::random_family;
using testutil::spec_from_family;

namespace {

bool has_violation(const ValidationReport& report, const std::string& axiom,
                   const std::vector<NodeId>& witness) {
  for (const Violation& v : report) {
    if (v.axiom == axiom && v.witness == witness) return true;
  }
  return false;
}

Universe diagonal_universe(std::size_t n) {
  Universe u;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string suffix = std::to_string(i);
    u.events.insert("e" + suffix);
    u.occurrences.insert("o" + suffix);
    u.occurrence_of.insert({"o" + suffix, "e" + suffix});
  }
  return u;
}

}  // namespace

TEST_CASE("universe axioms: valid universe is silent") {
  CHECK(validate_universe(diagonal_universe(3)).empty());
  CHECK(validate_universe(Universe{}).empty());
  CHECK(validate_universe(witness_model().universe).empty());
}

TEST_CASE("universe axioms: each violation with its witness") {
  SECTION("unsorted element mentioned by the occurrence assignment") {
    Universe u = diagonal_universe(1);
    u.occurrence_of.insert({"o1", "ghost"});
    const ValidationReport report = validate_universe(u);
    CHECK(has_violation(report, "E1", {"ghost"}));
    CHECK(has_violation(report, "E3", {"o1", "ghost"}));
  }
  SECTION("element in two sorts") {
    Universe u = diagonal_universe(1);
    u.observations.insert("o1");
    CHECK(has_violation(validate_universe(u), "E2", {"o1"}));
  }
  SECTION("assignment pair with swapped sorts") {
    Universe u = diagonal_universe(1);
    u.occurrence_of.insert({"e1", "o1"});
    CHECK(has_violation(validate_universe(u), "E3", {"e1", "o1"}));
  }
  SECTION("occurrence of no event") {
    Universe u = diagonal_universe(1);
    u.occurrences.insert("o2");
    const ValidationReport report = validate_universe(u);
    CHECK(report.size() == 1);
    CHECK(has_violation(report, "E4", {"o2"}));
  }
  SECTION("occurrence of two events") {
    Universe u = diagonal_universe(2);
    u.occurrence_of.insert({"o1", "e2"});
    const ValidationReport report = validate_universe(u);
    CHECK(report.size() == 1);
    CHECK(has_violation(report, "E5", {"o1", "e1", "e2"}));
  }
}

TEST_CASE("spec axioms: field restrictions") {
  const GsoSpec stray_et = make_spec({"o1"}, {{"o1", "ox"}}, {}, {});
  CHECK(has_violation(validate_spec(stray_et), "GSO1", {"o1", "ox"}));

  const GsoSpec stray_nlt = make_spec({"o1"}, {}, {{"ox", "o1"}}, {});
  CHECK(has_violation(validate_spec(stray_nlt), "GSO2", {"ox", "o1"}));

  const GsoSpec stray_ns =
      make_spec({"o1"}, {}, {}, {{"o1", "ox"}, {"ox", "o1"}});
  CHECK(has_violation(validate_spec(stray_ns), "GSO3", {"o1", "ox"}));
}

TEST_CASE("spec axioms: reflexivity, symmetry, intersection") {
  SECTION("reflexive nonsimultaneous pair: exactly one violation") {
    const GsoSpec s = make_spec({"o1"}, {}, {}, {{"o1", "o1"}});
    const ValidationReport report = validate_spec(s);
    REQUIRE(report.size() == 1);
    CHECK(to_line(*report.begin()) == "GSO4 (o1)");
  }
  SECTION("asymmetric nonsimultaneous") {
    const GsoSpec s = make_spec({"a", "b"}, {}, {}, {{"a", "b"}});
    const ValidationReport report = validate_spec(s);
    REQUIRE(report.size() == 1);
    CHECK(has_violation(report, "GSO5", {"a", "b"}));
  }
  SECTION("earlier-than edge not backed by the other relations") {
    const GsoSpec s = make_spec({"a", "b"}, {{"a", "b"}}, {}, {});
    CHECK(has_violation(validate_spec(s), "GSO6", {"a", "b"}));
  }
  SECTION("ordered and nonsimultaneous but not earlier") {
    const GsoSpec s = make_spec({"a", "b"}, {}, {{"a", "b"}},
                                {{"a", "b"}, {"b", "a"}});
    const ValidationReport report = validate_spec(s);
    REQUIRE(report.size() == 1);
    CHECK(has_violation(report, "GSO6", {"a", "b"}));
  }
  SECTION("reflexive not-later-than: exactly one violation") {
    const GsoSpec s = make_spec({"a"}, {}, {{"a", "a"}}, {});
    const ValidationReport report = validate_spec(s);
    REQUIRE(report.size() == 1);
    CHECK(has_violation(report, "GSO7", {"a"}));
  }
}

TEST_CASE("spec axioms: weak and mixed transitivity") {
  SECTION("weak transitivity breach on the running example") {
    GsoSpec s = witness_model().spec;
    s.not_later_than.remove_edge("o5", "o6");
    const ValidationReport report = validate_spec(s);
    REQUIRE(report.size() == 1);
    CHECK(has_violation(report, "GSO8", {"o5", "o7", "o6"}));
  }
  SECTION("weak transitivity tolerates a two-cycle") {
    // nlt {a->b, b->a}: the a != c guard makes this legal.
    const GsoSpec s = make_spec({"a", "b"}, {}, {{"a", "b"}, {"b", "a"}}, {});
    CHECK(validate_spec(s).empty());
  }
  SECTION("mixed transitivity breach") {
    const GsoSpec s = make_spec(
        {"a", "b", "c"}, {{"a", "b"}},
        {{"a", "b"}, {"b", "c"}, {"a", "c"}}, {{"a", "b"}, {"b", "a"}});
    const ValidationReport report = validate_spec(s);
    REQUIRE(report.size() == 1);
    CHECK(has_violation(report, "GSO9", {"a", "b", "c"}));
  }
}

TEST_CASE("report order is axiom-major and deterministic") {
  GsoSpec s = make_spec({"x", "y"}, {}, {{"y", "y"}}, {{"x", "x"}});
  const std::vector<std::string> lines = validate_spec(s).lines();
  REQUIRE(lines ==
          std::vector<std::string>{"GSO4 (x)", "GSO7 (y)"});
}

TEST_CASE("report truncation honors the cap") {
  NodeSet occ;
  EdgeSet loops;
  for (int i = 10; i < 40; ++i) {
    const NodeId id = "o" + std::to_string(i);
    occ.insert(id);
    loops.insert({id, id});
  }
  const GsoSpec s = make_spec(occ, {}, {}, loops);
  const ValidationReport report = validate_spec(s, 10);
  CHECK(report.size() == 10);
  CHECK(report.truncated());
  const ValidationReport full = validate_spec(s);
  CHECK(full.size() == 30);
  CHECK_FALSE(full.truncated());
}

TEST_CASE("running example: validation, decomposition, frozen shape") {
  const GsoSpec s = witness_model().spec;
  CHECK(validate_spec(s).empty());
  CHECK(check_derived_propositions(s).empty());
  CHECK(derive_earlier_than(s.not_later_than, s.nonsimultaneous) ==
        s.earlier_than);

  const SpecDecomposition d = decompose_spec(s);
  CHECK(d.base.edge_count() == 17);
  CHECK(d.base == s.earlier_than);
  CHECK(d.residual.edges() ==
        EdgeSet{{"o5", "o6"}, {"o5", "o7"}, {"o6", "o7"}, {"o7", "o6"}});
  CHECK(d.slack.edges() == EdgeSet{{"o2", "o3"}, {"o3", "o2"}});
  CHECK(validate_decomposition(d).empty());
  CHECK(compose_spec(d) == s);
}

TEST_CASE("decompose rejects invalid specs") {
  const GsoSpec s = make_spec({"o1"}, {}, {}, {{"o1", "o1"}});
  CHECK(error_kind_of([&] { decompose_spec(s); }) == ErrorKind::InvalidSpec);
}

TEST_CASE("random families yield valid specs that round-trip") {
  std::mt19937 rng(58008);
  for (int round = 0; round < 60; ++round) {
    const std::size_t size = 2 + static_cast<std::size_t>(round % 5);
    const NodeSet carrier = id_range("o", size);
    const auto family = random_family(rng, carrier, 1 + round % 4);
    const GsoSpec s = spec_from_family(carrier, family);

    CHECK(validate_spec(s).empty());
    CHECK(check_derived_propositions(s).empty());
    CHECK(derive_earlier_than(s.not_later_than, s.nonsimultaneous) ==
          s.earlier_than);

    const SpecDecomposition d = decompose_spec(s);
    CHECK(validate_decomposition(d).empty());
    CHECK(compose_spec(d) == s);
  }
}

TEST_CASE("partial orders embed as specs") {
  // earlier_than = not_later_than = a transitive DAG, nonsimultaneous = its
  // comparability graph: always a valid spec.
  std::mt19937 rng(6174);
  for (int round = 0; round < 30; ++round) {
    const NodeSet carrier = id_range("o", 2 + round % 5);
    const Digraph order = transitive_closure(random_dag(rng, carrier));
    GsoSpec s;
    s.occurrences = carrier;
    s.earlier_than = order;
    s.not_later_than = order;
    s.nonsimultaneous = comparability(order);
    CHECK(validate_spec(s).empty());

    const SpecDecomposition d = decompose_spec(s);
    CHECK(d.residual.edge_count() == 0);
    CHECK(d.slack.edge_count() == 0);
    CHECK(compose_spec(d) == s);
  }
}

TEST_CASE("derived propositions flag their own counterexamples") {
  GsoSpec intransitive;
  intransitive.occurrences = {"a", "b", "c"};
  intransitive.earlier_than = Digraph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(has_violation(check_derived_propositions(intransitive), "PROP1",
                      {"a", "b", "c"}));

  GsoSpec reflexive;
  reflexive.occurrences = {"a"};
  reflexive.earlier_than = Digraph({"a"}, {{"a", "a"}});
  CHECK(has_violation(check_derived_propositions(reflexive), "PROP1", {"a"}));

  GsoSpec mutual;
  mutual.occurrences = {"a", "b"};
  mutual.not_later_than = Digraph({"a", "b"}, {{"a", "b"}, {"b", "a"}});
  mutual.nonsimultaneous = Digraph({"a", "b"}, {{"a", "b"}});
  CHECK(has_violation(check_derived_propositions(mutual), "PROP2", {"a", "b"}));

  GsoSpec reversed;
  reversed.occurrences = {"a", "b"};
  reversed.earlier_than = Digraph({"a", "b"}, {{"a", "b"}});
  reversed.not_later_than = Digraph({"a", "b"}, {{"b", "a"}});
  CHECK(has_violation(check_derived_propositions(reversed), "PROP3", {"a", "b"}));
}

TEST_CASE("decomposition conditions are checked one by one") {
  const NodeSet vs{"a", "b", "c"};
  SpecDecomposition good;
  good.base = transitive_closure(Digraph(vs, {{"a", "b"}, {"b", "c"}}));
  good.residual = Digraph(vs);
  good.slack = Digraph(vs);
  REQUIRE(validate_decomposition(good).empty());

  SECTION("cyclic base") {
    SpecDecomposition d = good;
    d.base = Digraph(vs, {{"a", "b"}, {"b", "a"}});
    CHECK(validate_decomposition(d).mentions("D1"));
  }
  SECTION("intransitive base") {
    SpecDecomposition d = good;
    d.base = Digraph(vs, {{"a", "b"}, {"b", "c"}});
    CHECK(validate_decomposition(d).mentions("D1"));
  }
  SECTION("residual meets base comparability") {
    SpecDecomposition d = good;
    d.residual = Digraph(vs, {{"b", "a"}});
    CHECK(has_violation(validate_decomposition(d), "D2", {"b", "a"}));
  }
  SECTION("combined order intransitive") {
    // base a->b (alone transitive), residual b->c, combination lacks a->c.
    SpecDecomposition d;
    d.base = Digraph(vs, {{"a", "b"}});
    d.residual = Digraph(vs, {{"b", "c"}});
    d.slack = Digraph(vs);
    CHECK(has_violation(validate_decomposition(d), "D3", {"a", "b", "c"}));
  }
  SECTION("mixed composition lands in the residual") {
    // base a->b, residual b->c and a->c: a->c must be base, not residual.
    SpecDecomposition d;
    d.base = Digraph(vs, {{"a", "b"}});
    d.residual = Digraph(vs, {{"b", "c"}, {"a", "c"}});
    d.slack = Digraph(vs);
    CHECK(has_violation(validate_decomposition(d), "D4", {"a", "b", "c"}));
  }
  SECTION("slack asymmetric or reflexive") {
    SpecDecomposition d = good;
    d.slack = Digraph(vs, {{"a", "c"}});
    CHECK(has_violation(validate_decomposition(d), "D5", {"a", "c"}));
    d.slack = Digraph(vs, {{"a", "a"}});
    CHECK(has_violation(validate_decomposition(d), "D5", {"a", "a"}));
  }
  SECTION("slack meets the combined order") {
    SpecDecomposition d = good;
    d.slack = Digraph(vs, {{"a", "b"}, {"b", "a"}});
    CHECK(has_violation(validate_decomposition(d), "D6", {"a", "b"}));
  }
  SECTION("parts on different vertex sets") {
    SpecDecomposition d = good;
    d.slack = Digraph(NodeSet{"a", "b"});
    CHECK(error_kind_of([&] { validate_decomposition(d); }) ==
          ErrorKind::VertexMismatch);
  }
}

TEST_CASE("compose rejects bad decompositions with the failing condition") {
  SpecDecomposition d;
  d.base = Digraph(NodeSet{"a", "b"}, {{"a", "b"}, {"b", "a"}});
  d.residual = Digraph(NodeSet{"a", "b"});
  d.slack = Digraph(NodeSet{"a", "b"});
  try {
    compose_spec(d);
    FAIL("compose_spec accepted a cyclic base");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidDecomposition);
    CHECK(std::string(e.what()).find("D1") != std::string::npos);
  }
}

TEST_CASE("residual two-cycles survive the round-trip") {
  // A pair simultaneous in every run is weakly ordered both ways but never
  // strictly: the residual keeps the two-cycle and composition restores it.
  const NodeSet carrier{"a", "b"};
  const GsoSpec s = spec_from_family(carrier, {parse_steps("{a,b}")});
  CHECK(validate_spec(s).empty());
  CHECK(s.not_later_than.edges() == EdgeSet{{"a", "b"}, {"b", "a"}});
  const SpecDecomposition d = decompose_spec(s);
  CHECK(d.base.edge_count() == 0);
  CHECK(d.residual.edges() == EdgeSet{{"a", "b"}, {"b", "a"}});
  CHECK(d.slack.edge_count() == 0);
  CHECK(compose_spec(d) == s);
}

TEST_CASE("pairs ordered both ways across runs land in slack") {
  // Ordered in every run but reversed between runs: never weakly ordered,
  // only nonsimultaneous - the pair is slack, not residual.
  const NodeSet carrier{"a", "b"};
  const GsoSpec s = spec_from_family(
      carrier, {parse_steps("{a}{b}"), parse_steps("{b}{a}")});
  CHECK(validate_spec(s).empty());
  CHECK(s.not_later_than.edge_count() == 0);
  const SpecDecomposition d = decompose_spec(s);
  CHECK(d.base.edge_count() == 0);
  CHECK(d.residual.edge_count() == 0);
  CHECK(d.slack.edges() == EdgeSet{{"a", "b"}, {"b", "a"}});
  CHECK(compose_spec(d) == s);
}
