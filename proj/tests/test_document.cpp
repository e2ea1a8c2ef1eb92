// The shared document format: strict parsing, canonical serialization,
// fixture round-trips, derived step-sequence observations, and the exact
// rejection message for every malformed shape.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <gsokit/gsokit.hpp>

#include "generators.hpp"

using namespace gsokit;
using Catch::Matchers::Message;

namespace {

std::string fixtures_dir() {
  const char* dir = std::getenv("GSOKIT_FIXTURES");
  REQUIRE(dir != nullptr);
  return dir;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string fixture(const std::string& name) {
  return read_file(fixtures_dir() + "/" + name);
}

}  // namespace

TEST_CASE("every fixture survives a byte-identical round trip") {
  const std::vector<std::string> names = {
      "bad_gso4.spec.json",          "empty2.spec.json",
      "example1.spec.json",          "example1_obs_ad.family.json",
      "example1_obs_bc.family.json", "two_observer.psl.json"};
  for (const auto& name : names) {
    INFO(name);
    const std::string text = fixture(name);
    const Document doc = parse_document(text);
    REQUIRE(serialize_document(doc) == text);
    REQUIRE(parse_document(serialize_document(doc)) == doc);
  }

  // The model fixture is deliberately kept in the step-sequence input form;
  // one serialization canonicalizes it to explicit triples, after which the
  // bytes are stable.
  const std::string text = fixture("witness.model.json");
  const Document doc = parse_document(text);
  const std::string canon = serialize_document(doc);
  REQUIRE(canon != text);
  REQUIRE(parse_document(canon) == doc);
  REQUIRE(serialize_document(parse_document(canon)) == canon);
}

TEST_CASE("the model fixture parses to the built-in worked example") {
  const Document doc = parse_document(fixture("witness.model.json"));
  REQUIRE(doc.kind == "gso-model");
  REQUIRE(doc.model == witness_model());
}

TEST_CASE("the spec fixture carries the worked-example relations") {
  const Document doc = parse_document(fixture("example1.spec.json"));
  REQUIRE(doc.kind == "spec");
  REQUIRE(doc.spec == witness_model().spec);
}

TEST_CASE("both family fixtures reconstruct the worked-example spec") {
  const Document ad = parse_document(fixture("example1_obs_ad.family.json"));
  REQUIRE(ad.kind == "observation-family");
  REQUIRE(ad.family.occurrences == testutil::id_range("o", 7));
  REQUIRE(ad.family.members ==
          std::vector<RankingStructure>{parse_steps("{o1}{o2}{o3}{o4}{o5,o6,o7}"),
                                        parse_steps("{o1}{o3}{o2}{o4}{o5}{o6,o7}")});

  const Document bc = parse_document(fixture("example1_obs_bc.family.json"));
  REQUIRE(bc.family.members ==
          std::vector<RankingStructure>{parse_steps("{o1}{o3}{o2}{o4}{o5,o6,o7}"),
                                        parse_steps("{o1}{o2}{o3}{o4}{o5}{o6,o7}")});

  const GsoSpec target = witness_model().spec;
  for (const Document* doc : {&ad, &bc}) {
    std::vector<StratOrder> runs;
    for (const auto& r : doc->family.members) runs.push_back(from_ranking(r));
    const Reconstruction rec = reconstruct(doc->family.carrier(), runs);
    REQUIRE(rec.earlier_than == target.earlier_than);
    REQUIRE(rec.not_later_than == target.not_later_than);
    REQUIRE(rec.nonsimultaneous == target.nonsimultaneous);
  }
}

TEST_CASE("step-sequence observations derive the explicit triples") {
  const std::string steps_form = R"({
    "kind": "gso-model",
    "events": [],
    "occurrences": ["a", "b", "c"],
    "observations": {"w": "{b,a}{c}"}
  })";
  const std::string explicit_form = R"({
    "kind": "gso-model",
    "events": [],
    "occurrences": ["a", "b", "c"],
    "observations": ["w"],
    "observed_before": [["a", "c", "w"], ["b", "c", "w"]],
    "observed_simult": [["a", "b", "w"], ["b", "a", "w"]]
  })";
  const Document steps = parse_document(steps_form);
  const Document explicit_doc = parse_document(explicit_form);
  REQUIRE(steps == explicit_doc);
  REQUIRE(serialize_document(steps) == serialize_document(explicit_doc));
  REQUIRE(parse_document(serialize_document(steps)) == steps);
}

TEST_CASE("rankings parse from step text or block arrays identically") {
  const std::string text = R"({
    "kind": "observation-family",
    "occurrences": ["a", "b", "c"],
    "observations": ["{a}{b,c}", [["a"], ["c", "b"]]]
  })";
  const Document doc = parse_document(text);
  REQUIRE(doc.family.members.size() == 2);
  REQUIRE(doc.family.members[0] == doc.family.members[1]);

  // Canonical output renders every member as step text.
  const std::string canon = serialize_document(doc);
  REQUIRE(canon.find("[[") == std::string::npos);
  REQUIRE(parse_document(canon) == doc);
}

TEST_CASE("a family without a carrier accepts any well-formed ids") {
  const Document doc =
      parse_document(R"({"kind": "observation-family", "observations": ["{x}{y}"]})");
  REQUIRE_FALSE(doc.family.occurrences.has_value());
  REQUIRE(doc.family.carrier() == NodeSet{"x", "y"});
  REQUIRE(parse_document(serialize_document(doc)) == doc);

  const Document blocks = parse_document(
      R"({"kind": "observation-family", "observations": [[["y"], ["x"]]]})");
  REQUIRE(blocks.family.members ==
          std::vector<RankingStructure>{parse_steps("{y}{x}")});
}

TEST_CASE("serialization is canonical on random values") {
  std::mt19937 rng(91121);
  const NodeSet carrier = testutil::id_range("n", 6);
  for (int round = 0; round < 25; ++round) {
    Document doc;
    switch (testutil::coin(rng, 3)) {
      case 0:
        doc.kind = "spec";
        doc.spec = testutil::random_valid_spec(rng, carrier, 2);
        break;
      case 1:
        doc.kind = "gso-model";
        doc.model = testutil::random_valid_model(
            rng, carrier, 1 + static_cast<std::size_t>(testutil::coin(rng, 3)));
        break;
      default:
        doc.kind = "observation-family";
        doc.family.occurrences = carrier;
        doc.family.members = testutil::random_family(rng, carrier, 2);
        break;
    }
    INFO("round " << round << " kind " << doc.kind);
    const std::string text = serialize_document(doc);
    REQUIRE(parse_document(text) == doc);
    REQUIRE(serialize_document(parse_document(text)) == text);
  }
}

TEST_CASE("malformed documents are rejected with precise messages") {
  auto reject = [](const std::string& text, const std::string& message) {
    REQUIRE_THROWS_MATCHES(parse_document(text), Error, Message(message));
  };

  SECTION("dispatch") {
    reject("[]", "ParseError: document must be a JSON object");
    reject("{}", "ParseError: document needs a 'kind'");
    reject(R"({"kind": 3})", "ParseError: 'kind' must be a string");
    reject(R"({"kind": "nope"})", "ParseError: unknown kind 'nope'");
    try {
      parse_document("{ not json");
      FAIL("expected a parse error");
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::ParseError);
    }
  }

  SECTION("unknown keys are caught before anything else") {
    reject(R"({"kind": "spec", "occurrences": [], "zz": 1})",
           "ParseError: unknown key 'zz'");
    reject(R"({"kind": "psl-model", "color": "red"})",
           "ParseError: unknown key 'color'");
  }

  SECTION("sort sections") {
    reject(R"({"kind": "spec"})", "ParseError: spec document needs 'occurrences'");
    reject(R"({"kind": "spec", "occurrences": 5})",
           "ParseError: 'occurrences' must be an array of ids");
    reject(R"({"kind": "spec", "occurrences": [5]})",
           "ParseError: 'occurrences' entry must be a string id");
    reject(R"({"kind": "spec", "occurrences": ["a b"]})",
           "ParseError: 'occurrences' entry: 'a b' is not a valid id");
    reject(R"({"kind": "spec", "occurrences": [""]})",
           "ParseError: 'occurrences' entry: '' is not a valid id");
    reject(R"({"kind": "spec", "occurrences": ["a", "a"]})",
           "ParseError: 'occurrences' lists 'a' twice");
  }

  SECTION("pair sections") {
    reject(R"({"kind": "spec", "occurrences": ["a"], "earlier_than": 5})",
           "ParseError: 'earlier_than' must be an array of pairs");
    reject(R"({"kind": "spec", "occurrences": ["a"], "earlier_than": [["a"]]})",
           "ParseError: 'earlier_than' entries must be [a, b] pairs");
    reject(R"({"kind": "spec", "occurrences": ["a"], "not_later_than": [["a", "zz"]]})",
           "ParseError: 'not_later_than' pair: 'zz' is not declared");
    reject(R"({"kind": "spec", "occurrences": ["a"], "nonsimultaneous": [[5, "a"]]})",
           "ParseError: 'nonsimultaneous' pair must be a string id");
  }

  SECTION("gso-model sections") {
    reject(R"({"kind": "gso-model", "occurrences": [], "observations": []})",
           "ParseError: gso-model document needs 'events'");
    reject(R"({"kind": "gso-model", "events": [], "observations": []})",
           "ParseError: gso-model document needs 'occurrences'");
    reject(R"({"kind": "gso-model", "events": [], "occurrences": []})",
           "ParseError: gso-model document needs 'observations'");
    reject(R"({"kind": "gso-model", "events": [], "occurrences": ["a", "b"],
               "observations": ["w"], "observed_before": [["a", "b"]]})",
           "ParseError: 'observed_before' entries must be [a, b, c] triples");
    reject(R"({"kind": "gso-model", "events": [], "occurrences": ["a", "b"],
               "observations": ["w"], "observed_simult": [["a", "zz", "w"]]})",
           "ParseError: 'observed_simult' triple: 'zz' is not declared");
    reject(R"({"kind": "gso-model", "events": [], "occurrences": ["a", "b"],
               "observations": ["w"], "observed_before": "x"})",
           "ParseError: 'observed_before' must be an array of triples");
  }

  SECTION("step-sequence observations") {
    reject(R"({"kind": "gso-model", "events": [], "occurrences": ["a"],
               "observations": {"w": "{a}"}, "observed_before": []})",
           "ParseError: 'observed_before'/'observed_simult' conflict with "
           "step-sequence observations");
    reject(R"({"kind": "gso-model", "events": [], "occurrences": ["a"],
               "observations": {"w w": "{a}"}})",
           "ParseError: observation id 'w w' is not a valid id");
    reject(R"({"kind": "gso-model", "events": [], "occurrences": ["a"],
               "observations": {"w": 5}})",
           "ParseError: observation 'w' must map to step-sequence text");
    reject(R"({"kind": "gso-model", "events": [], "occurrences": ["a"],
               "observations": {"w": "{zz}"}})",
           "ParseError: observation 'w': 'zz' is not declared");
  }

  SECTION("observation families") {
    reject(R"({"kind": "observation-family"})",
           "ParseError: observation-family document needs 'observations'");
    reject(R"({"kind": "observation-family", "observations": "x"})",
           "ParseError: 'observations' must be an array of rankings");
    reject(R"({"kind": "observation-family", "observations": [5]})",
           "ParseError: observation 0 must be step-sequence text or an array of blocks");
    reject(R"({"kind": "observation-family", "occurrences": ["a"],
               "observations": ["{a}", 5]})",
           "ParseError: observation 1 must be step-sequence text or an array of blocks");
    reject(R"({"kind": "observation-family", "occurrences": ["a"],
               "observations": ["{zz}"]})",
           "ParseError: observation 0: 'zz' is not declared");
    reject(R"({"kind": "observation-family", "observations": [[["a"], "b"]]})",
           "ParseError: observation 0 blocks must be arrays of ids");
    reject(R"({"kind": "observation-family", "observations": [[[]]]})",
           "ParseError: ranking block must be nonempty");
    reject(R"({"kind": "observation-family", "observations": ["{a}{a}"]})",
           "DuplicateOccurrence: 'a' appears twice");
  }

  SECTION("psl-model sections") {
    reject(R"({"kind": "psl-model", "activities": [], "activity_occurrences": [],
               "objects": []})",
           "ParseError: psl-model document needs 'timepoints'");
    reject(R"({"kind": "psl-model", "activities": ["a"], "activity_occurrences": [],
               "timepoints": ["t"], "objects": [], "before": [["t", "zz"]]})",
           "ParseError: 'before' pair: 'zz' is not declared");
    reject(R"({"kind": "psl-model", "activities": ["a"], "activity_occurrences": ["ao"],
               "timepoints": ["t"], "objects": ["x"],
               "participates_in": [["x", "ao"]]})",
           "ParseError: 'participates_in' entries must be [a, b, c] triples");
  }
}

TEST_CASE("documents carry structures the validators then reject") {
  // Parsing is strict about shape but deliberately not about axioms: the
  // reflexive-pair fixture parses cleanly and only the validator objects.
  const Document doc = parse_document(fixture("bad_gso4.spec.json"));
  REQUIRE(validate_spec(doc.spec).lines() == std::vector<std::string>{"GSO4 (o1)"});

  // Relations may even mention non-occurrence ids; the spec validator
  // reports the sort violation rather than the parser.
  const Document mixed = parse_document(
      R"({"kind": "gso-model", "events": ["e"], "occurrences": ["a"],
          "observations": ["w"], "earlier_than": [["a", "e"]]})");
  REQUIRE(mixed.model.spec.earlier_than.has_edge("a", "e"));
  REQUIRE_FALSE(validate_spec(mixed.model.spec).empty());
}

TEST_CASE("classification output is an emit-only kind") {
  const ClassificationData c = classify(witness_model());
  const std::string out = serialize_classification(c);
  const nlohmann::json j = nlohmann::json::parse(out);

  REQUIRE(j.at("kind") == "classification");
  REQUIRE(j.at("event_partition") ==
          nlohmann::json::parse(
              R"([["o1"], ["o2"], ["o3"], ["o4"], ["o5"], ["o6"], ["o7"]])"));
  REQUIRE(j.at("base").size() == 17);
  REQUIRE(j.at("residual") ==
          nlohmann::json::parse(
              R"([["o5", "o6"], ["o5", "o7"], ["o6", "o7"], ["o7", "o6"]])"));
  REQUIRE(j.at("slack") == nlohmann::json::parse(R"([["o2", "o3"], ["o3", "o2"]])"));
  REQUIRE(j.at("ranking_family") ==
          nlohmann::json::parse(R"({"ob_a": "{o1}{o2}{o3}{o4}{o5,o6,o7}",
                                    "ob_d": "{o1}{o3}{o2}{o4}{o5}{o6,o7}"})"));

  REQUIRE_THROWS_MATCHES(parse_document(out), Error,
                         Message("ParseError: unknown kind 'classification'"));
  Document stray;
  stray.kind = "zz";
  REQUIRE_THROWS_MATCHES(serialize_document(stray), Error,
                         Message("ParseError: unknown kind 'zz'"));
}
