#pragma once

// A validation report is the common currency of every axiom checker in the
// toolkit: a flat list of (axiom id, witness tuple) entries, empty exactly
// when the checked object satisfies the theory in question. Axiom ids are
// fixed strings ("GSO4", "O10", "E2", "EX1", ...); witnesses are the variable
// assignment that falsifies the axiom instance, in quantifier order.

#include <cstddef>
#include <string>
#include <vector>

#include "gsokit/relgraph.hpp"

namespace gsokit {

using AxiomId = std::string;

struct Violation {
  AxiomId axiom;
  std::vector<NodeId> witness;

  bool operator==(const Violation& other) const = default;
};

inline std::string to_line(const Violation& v) {
  std::string out = v.axiom + " (";
  for (std::size_t i = 0; i < v.witness.size(); ++i) {
    if (i) out += ", ";
    out += v.witness[i];
  }
  out += ")";
  return out;
}

class ValidationReport {
 public:
  // Witness collection stops at the cap so pathological inputs cannot blow
  // up report sizes; `truncated` records that more violations exist.
  explicit ValidationReport(std::size_t cap = 100) : cap_(cap) {}

  // Stores the violation and returns true while there is room; once the
  // report is full the entry is dropped, truncation is recorded, and false
  // tells the caller to stop scanning.
  bool add(AxiomId axiom, std::vector<NodeId> witness) {
    if (violations_.size() >= cap_) {
      truncated_ = true;
      return false;
    }
    violations_.push_back({std::move(axiom), std::move(witness)});
    return true;
  }

  // For mergers that know a sub-report was cut short.
  void mark_truncated() { truncated_ = true; }

  bool empty() const { return violations_.empty(); }
  std::size_t size() const { return violations_.size(); }
  bool truncated() const { return truncated_; }
  const std::vector<Violation>& violations() const { return violations_; }

  auto begin() const { return violations_.begin(); }
  auto end() const { return violations_.end(); }

  // True iff some entry cites the given axiom.
  bool mentions(const AxiomId& axiom) const {
    for (const auto& v : violations_) {
      if (v.axiom == axiom) return true;
    }
    return false;
  }

  std::vector<std::string> lines() const {
    std::vector<std::string> out;
    out.reserve(violations_.size());
    for (const auto& v : violations_) out.push_back(to_line(v));
    return out;
  }

 private:
  std::size_t cap_;
  bool truncated_ = false;
  std::vector<Violation> violations_;
};

}  // namespace gsokit
