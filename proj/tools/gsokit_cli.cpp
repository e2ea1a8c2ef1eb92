// gsokit: command-line front end for the gso-structure toolkit.
//
// Subcommands
//   validate       check a document against a chosen axiom set
//   extensions     enumerate the stratified-order extensions of a spec
//   reconstruct    rebuild a spec from observation families
//   classify       decompose a model into classification data
//   translate-psl  translate an occurrence/timepoint model into a gso-model
//   export-dot     emit one relation of a spec as a DOT graph
//
// Exit codes
//   0  success (valid input, output written)
//   1  the input violates the checked axioms or properties
//   2  unusable input or usage error (parse failure, wrong document kind,
//      missing file, bad flags, carrier mismatch)
//   3  a resource limit was hit (carrier too large, --limit exceeded)
//
// Reports and documents go to stdout; diagnostics go to stderr. Output is
// byte-deterministic for a given input.

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <gsokit/gsokit.hpp>

namespace {

using namespace gsokit;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kLimit = 3;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CarrierTooLarge:
    case ErrorKind::SizeLimit:
      return kLimit;
    case ErrorKind::CyclicInput:
    case ErrorKind::NotStratified:
    case ErrorKind::InvalidSpec:
    case ErrorKind::InvalidDecomposition:
    case ErrorKind::NotAModel:
    case ErrorKind::InvalidClassificationData:
      return kViolation;
    default:
      return kUsage;
  }
}

[[noreturn]] void usage_fail(const std::string& what) {
  throw Error(ErrorKind::ParseError, what);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage_fail("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Document load(const std::string& path) { return parse_document(read_file(path)); }

// Violation reports: one line per violation, nothing on success.
int print_report(const ValidationReport& report) {
  for (const std::string& line : report.lines()) std::cout << line << "\n";
  return report.empty() ? kOk : kViolation;
}

int run_validate(const std::string& file, const std::string& theory) {
  const Document d = load(file);
  if (d.kind == "spec") {
    if (!theory.empty() && theory != "spec") {
      usage_fail("theory '" + theory +
                 "' needs a gso-model document; a spec document is checked "
                 "against the spec axioms");
    }
    return print_report(validate_spec(d.spec));
  }
  if (d.kind == "gso-model") {
    Theory th = Theory::Gso;
    if (theory == "univ") {
      th = Theory::Univ;
    } else if (theory == "spec") {
      th = Theory::Spec;
    } else if (theory == "gso-minus") {
      th = Theory::GsoMinus;
    }
    return print_report(check_axioms(d.model, th));
  }
  if (d.kind == "psl-model") {
    if (!theory.empty()) {
      usage_fail("--theory does not apply to psl-model documents; they are "
                 "checked for well-formedness");
    }
    return print_report(is_well_formed(d.psl));
  }
  usage_fail("validate needs a spec, gso-model, or psl-model document; '" +
             file + "' is '" + d.kind + "'");
}

std::size_t enumeration_bound() {
  const char* env = std::getenv("GSOKIT_LIMIT");
  if (env == nullptr) return 10;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || end == env || *end != '\0' || std::string(env).front() == '-') {
    usage_fail("GSOKIT_LIMIT must be a nonnegative integer, got '" +
               std::string(env) + "'");
  }
  return static_cast<std::size_t>(v);
}

int run_extensions(const std::string& file, const std::string& format,
                   std::optional<std::size_t> limit) {
  const Document d = load(file);
  if (d.kind != "spec") {
    usage_fail("extensions needs a spec document; '" + file + "' is '" + d.kind +
               "'");
  }
  const ExtensionSet all = enumerate_extensions(d.spec, enumeration_bound());
  std::vector<RankingStructure> members(all.members.begin(), all.members.end());
  const bool truncated = limit && members.size() > *limit;
  if (truncated) members.resize(*limit);
  if (format == "json") {
    ObservationFamilyDoc f;
    f.occurrences = d.spec.occurrences;
    f.members = std::move(members);
    std::cout << serialize_family(f);
  } else {
    for (const auto& r : members) std::cout << render_steps(r) << "\n";
  }
  return truncated ? kLimit : kOk;
}

int run_reconstruct(const std::vector<std::string>& files,
                    const std::string& carrier_file) {
  std::vector<ObservationFamilyDoc> docs;
  for (const auto& path : files) {
    Document d = load(path);
    if (d.kind != "observation-family") {
      usage_fail("reconstruct needs observation-family documents; '" + path +
                 "' is '" + d.kind + "'");
    }
    docs.push_back(std::move(d.family));
  }
  NodeSet carrier;
  bool carrier_given = false;
  if (!carrier_file.empty()) {
    const Document c = load(carrier_file);
    if (c.kind == "spec") {
      carrier = c.spec.occurrences;
    } else if (c.kind == "gso-model") {
      carrier = c.model.universe.occurrences;
    } else if (c.kind == "observation-family") {
      carrier = c.family.carrier();
    } else {
      usage_fail("--carrier needs a document that declares occurrences; '" +
                 carrier_file + "' is '" + c.kind + "'");
    }
    carrier_given = true;
  }
  std::vector<StratOrder> family;
  for (const auto& f : docs) {
    if (!carrier_given) {
      const NodeSet c = f.carrier();
      carrier.insert(c.begin(), c.end());
    }
    for (const auto& r : f.members) family.push_back(from_ranking(r));
  }
  const Reconstruction rec = reconstruct(carrier, family);
  const GsoSpec out{carrier, rec.earlier_than, rec.not_later_than,
                    rec.nonsimultaneous};
  std::cout << serialize_spec(out);
  return kOk;
}

int run_classify(const std::string& file) {
  const Document d = load(file);
  if (d.kind != "gso-model") {
    usage_fail("classify needs a gso-model document; '" + file + "' is '" +
               d.kind + "'");
  }
  const ValidationReport report = check_axioms(d.model, Theory::Gso);
  if (!report.empty()) return print_report(report);
  std::cout << serialize_classification(classify(d.model));
  return kOk;
}

int run_translate_psl(const std::string& file) {
  const Document d = load(file);
  if (d.kind != "psl-model") {
    usage_fail("translate-psl needs a psl-model document; '" + file + "' is '" +
               d.kind + "'");
  }
  const ValidationReport report = is_well_formed(d.psl);
  if (!report.empty()) return print_report(report);
  std::cout << serialize_model(translate(d.psl).model);
  return kOk;
}

int run_export_dot(const std::string& file, const std::string& graph,
                   bool reduce) {
  const Document d = load(file);
  GsoSpec spec;
  if (d.kind == "spec") {
    spec = d.spec;
  } else if (d.kind == "gso-model") {
    spec = d.model.spec;
  } else {
    usage_fail("export-dot needs a spec or gso-model document; '" + file +
               "' is '" + d.kind + "'");
  }
  if (reduce && graph != "et" && graph != "nlt") {
    usage_fail("--reduce applies only to the et and nlt views");
  }
  if (graph == "et") {
    const Digraph g =
        reduce ? transitive_reduction(spec.earlier_than) : spec.earlier_than;
    std::cout << dot_digraph("earlier_than", g);
  } else if (graph == "nlt") {
    // Solid earlier-than skeleton plus the dashed strictly-weaker edges.
    const Digraph solid =
        reduce ? transitive_reduction(spec.earlier_than) : spec.earlier_than;
    const Digraph dashed =
        graph_difference(spec.not_later_than, spec.earlier_than);
    std::cout << dot_digraph("not_later_than", solid, dashed);
  } else if (graph == "ns") {
    std::cout << dot_graph("nonsimultaneous", spec.nonsimultaneous);
  } else {
    std::cout << dot_graph("nonsimultaneous_complement",
                           complement(spec.nonsimultaneous));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Toolkit for generalized stratified order structures: validation, "
      "extension enumeration, reconstruction, classification, translation, "
      "and DOT export over one JSON document format."};
  app.require_subcommand(1);

  std::string validate_file;
  std::string validate_theory;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "Check a document against an axiom set; one violation per "
                  "line on stdout, exit 1 if any");
  validate_cmd->add_option("file", validate_file, "input document")->required();
  validate_cmd
      ->add_option("--theory", validate_theory,
                   "axiom set for gso-model documents (default: gso)")
      ->check(CLI::IsMember({"univ", "spec", "gso", "gso-minus"}));

  std::string ext_file;
  std::string ext_format = "steps";
  std::size_t ext_limit = 0;
  CLI::App* ext_cmd = app.add_subcommand(
      "extensions", "Enumerate all stratified-order extensions of a spec in "
                    "canonical order");
  ext_cmd->add_option("file", ext_file, "spec document")->required();
  ext_cmd
      ->add_option("--format", ext_format,
                   "steps: one step sequence per line; json: an "
                   "observation-family document")
      ->check(CLI::IsMember({"steps", "json"}));
  ext_cmd->add_option(
      "--limit", ext_limit,
      "print at most N extensions; exit 3 if more exist (the GSOKIT_LIMIT "
      "environment variable instead bounds the carrier size, default 10)");

  std::vector<std::string> recon_files;
  std::string recon_carrier;
  CLI::App* recon_cmd = app.add_subcommand(
      "reconstruct", "Intersect observation families into a spec document");
  recon_cmd->add_option("files", recon_files, "observation-family documents")
      ->required();
  recon_cmd->add_option("--carrier", recon_carrier,
                        "document whose occurrence set fixes the carrier "
                        "(default: union of the family carriers)");

  std::string classify_file;
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "Check a gso-model and emit its classification data "
                  "(event partition, spec decomposition, ranking family)");
  classify_cmd->add_option("file", classify_file, "gso-model document")
      ->required();

  std::string psl_file;
  CLI::App* psl_cmd = app.add_subcommand(
      "translate-psl", "Translate a well-formed psl-model document into a "
                       "gso-model document over its observers");
  psl_cmd->add_option("file", psl_file, "psl-model document")->required();

  std::string dot_file;
  std::string dot_graph_name;
  bool dot_reduce = false;
  CLI::App* dot_cmd = app.add_subcommand(
      "export-dot", "Emit one relation of a spec as a DOT graph");
  dot_cmd->add_option("file", dot_file, "spec or gso-model document")
      ->required();
  dot_cmd
      ->add_option("--graph", dot_graph_name,
                   "et: earlier-than; nlt: earlier-than solid plus the "
                   "remaining not-later-than edges dashed; ns: "
                   "nonsimultaneous; ns-complement: its complement")
      ->required()
      ->check(CLI::IsMember({"et", "nlt", "ns", "ns-complement"}));
  dot_cmd->add_flag("--reduce", dot_reduce,
                    "transitively reduce the earlier-than skeleton (et and "
                    "nlt views only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand(validate_cmd)) {
      return run_validate(validate_file, validate_theory);
    }
    if (app.got_subcommand(ext_cmd)) {
      std::optional<std::size_t> limit;
      if (ext_cmd->count("--limit") > 0) limit = ext_limit;
      return run_extensions(ext_file, ext_format, limit);
    }
    if (app.got_subcommand(recon_cmd)) {
      return run_reconstruct(recon_files, recon_carrier);
    }
    if (app.got_subcommand(classify_cmd)) return run_classify(classify_file);
    if (app.got_subcommand(psl_cmd)) return run_translate_psl(psl_file);
    if (app.got_subcommand(dot_cmd)) {
      return run_export_dot(dot_file, dot_graph_name, dot_reduce);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
