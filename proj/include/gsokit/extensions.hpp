#pragma once

// Stratified-order extensions of a spec. A run (stratified order) extends a
// spec when it respects both constraint relations: nonsimultaneous pairs are
// ordered one way or the other, and not-later-than pairs are never observed
// in reverse. Enumerating all extensions and intersecting their derived
// relations reconstructs the spec exactly — the reconstruction theorem this
// module operationalizes at finite scale.

#include <algorithm>
#include <bit>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "gsokit/errors.hpp"
#include "gsokit/gso.hpp"
#include "gsokit/observations.hpp"
#include "gsokit/relgraph.hpp"
#include "gsokit/validation.hpp"

namespace gsokit {

// Membership verdict; on failure, `failure` names the violated condition
// ("O7": nonsimultaneity unobserved, "O8": not-later-than reversed) and the
// offending pair.
struct ExtensionCheck {
  bool ok = true;
  Violation failure;

  explicit operator bool() const { return ok; }
};

inline ExtensionCheck is_extension(const GsoSpec& spec, const StratOrder& s) {
  if (s.carrier() != spec.occurrences) {
    throw Error(ErrorKind::CarrierMismatch, "extension candidate is on a different carrier");
  }
  for (const auto& [a, b] : spec.nonsimultaneous.edges()) {
    if (!s.order.has_edge(a, b) && !s.order.has_edge(b, a)) {
      return {false, {"O7", {a, b}}};
    }
  }
  for (const auto& [a, b] : spec.not_later_than.edges()) {
    if (s.order.has_edge(b, a)) {
      return {false, {"O8", {a, b}}};
    }
  }
  return {true, {}};
}

struct ExtensionSet {
  GsoSpec spec;
  std::set<RankingStructure> members;  // canonical order, deduplicated
};

// All rankings of the carrier whose stratified order extends the spec, built
// block by block. A candidate next block B survives iff no nonsimultaneous
// pair lies inside B and no not-later-than edge (a,b) has b in B while a is
// still unplaced outside B — pruning that is exact, not heuristic: every
// completion of a pruned prefix would violate the corresponding condition.
inline ExtensionSet enumerate_extensions(const GsoSpec& spec,
                                         std::size_t max_occurrences = 10) {
  {
    ValidationReport check = validate_spec(spec);
    if (!check.empty()) {
      throw Error(ErrorKind::InvalidSpec, "cannot enumerate: " + to_line(*check.begin()));
    }
  }
  if (spec.occurrences.size() > max_occurrences || spec.occurrences.size() > 32) {
    throw Error(ErrorKind::CarrierTooLarge,
                std::to_string(spec.occurrences.size()) + " occurrences exceed the bound of " +
                    std::to_string(std::min<std::size_t>(max_occurrences, 32)));
  }

  ExtensionSet out;
  out.spec = spec;
  const std::vector<NodeId> ids(spec.occurrences.begin(), spec.occurrences.end());
  const std::size_t n = ids.size();
  std::map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(ids[i], i);

  std::vector<std::vector<NodeId>> blocks;
  auto search = [&](auto&& self, std::uint32_t remaining) -> void {
    if (remaining == 0) {
      out.members.insert(RankingStructure(blocks));
      return;
    }
    // Iterate candidate blocks as nonempty submasks of `remaining`.
    for (std::uint32_t sub = remaining; sub != 0; sub = (sub - 1) & remaining) {
      bool viable = true;
      for (std::size_t i = 0; i < n && viable; ++i) {
        if (!(sub >> i & 1u)) continue;
        for (std::size_t j = 0; j < n && viable; ++j) {
          if (i != j && (sub >> j & 1u) && spec.nonsimultaneous.has_edge(ids[i], ids[j])) {
            viable = false;  // nonsimultaneous pair forced simultaneous
          }
        }
      }
      if (viable) {
        for (const auto& [a, b] : spec.not_later_than.edges()) {
          std::size_t ia = index.at(a);
          std::size_t ib = index.at(b);
          bool b_in = (sub >> ib & 1u) != 0;
          bool a_waiting = (remaining >> ia & 1u) != 0 && !(sub >> ia & 1u);
          if (b_in && a_waiting) {
            viable = false;  // would place b strictly before a despite a <= b
            break;
          }
        }
      }
      if (!viable) continue;
      std::vector<NodeId> block;
      for (std::size_t i = 0; i < n; ++i) {
        if (sub >> i & 1u) block.push_back(ids[i]);
      }
      blocks.push_back(std::move(block));
      self(self, remaining & ~sub);
      blocks.pop_back();
    }
  };
  search(search, n == 32 ? ~std::uint32_t(0) : (std::uint32_t(1) << n) - 1);
  return out;
}

// The reconstruction triple: intersections over a family of runs.
struct Reconstruction {
  UGraph nonsimultaneous;   // pairs ordered in every run
  Digraph not_later_than;   // pairs never reversed in any run
  Digraph earlier_than;     // the intersection of the two above

  bool operator==(const Reconstruction& other) const = default;
};

inline Reconstruction reconstruct(const NodeSet& carrier,
                                  const std::vector<StratOrder>& family) {
  if (family.empty()) {
    throw Error(ErrorKind::EmptyFamily, "reconstruction needs at least one run");
  }
  for (const auto& s : family) {
    if (s.carrier() != carrier) {
      throw Error(ErrorKind::CarrierMismatch, "family member is on a different carrier");
    }
    ValidationReport check = is_stratified(s.order);
    if (!check.empty()) {
      throw Error(ErrorKind::NotStratified, to_line(*check.begin()));
    }
  }
  Reconstruction out;
  out.nonsimultaneous = symmetric_closure(family.front().order);
  out.not_later_than = frown_order(family.front());
  for (std::size_t i = 1; i < family.size(); ++i) {
    out.nonsimultaneous =
        graph_intersection(out.nonsimultaneous, symmetric_closure(family[i].order));
    out.not_later_than = graph_intersection(out.not_later_than, frown_order(family[i]));
  }
  out.earlier_than = derive_earlier_than(out.not_later_than, out.nonsimultaneous);
  return out;
}

// Completeness of a family against a spec: every freedom the spec leaves
// open must be witnessed by some run.
//   O9   pair not nonsimultaneous -> some run has it simultaneous
//   O10  pair not not-later-than  -> some run reverses it
inline ValidationReport check_completeness(const GsoSpec& spec,
                                           const std::vector<StratOrder>& family,
                                           std::size_t cap = 100) {
  ValidationReport report(cap);
  for (const auto& a : spec.occurrences) {
    for (const auto& b : spec.occurrences) {
      if (a >= b || spec.nonsimultaneous.has_edge(a, b)) continue;
      bool witnessed = false;
      for (const auto& s : family) {
        if (!s.order.has_edge(a, b) && !s.order.has_edge(b, a)) {
          witnessed = true;
          break;
        }
      }
      if (!witnessed) {
        if (!report.add("O9", {a, b})) return report;
      }
    }
  }
  for (const auto& a : spec.occurrences) {
    for (const auto& b : spec.occurrences) {
      if (a == b || spec.not_later_than.has_edge(a, b)) continue;
      bool witnessed = false;
      for (const auto& s : family) {
        if (s.order.has_edge(b, a)) {
          witnessed = true;
          break;
        }
      }
      if (!witnessed) {
        if (!report.add("O10", {a, b})) return report;
      }
    }
  }
  return report;
}

// All inclusion-minimal subsets of the extension set that reconstruct the
// spec exactly. Brute force over subsets with bit-packed relation masks;
// the member count is capped because the subset lattice is exponential.
inline std::set<std::set<RankingStructure>> minimal_reconstructing_subsets(
    const GsoSpec& spec, std::size_t max_occurrences = 10, std::size_t max_members = 20) {
  const ExtensionSet ext = enumerate_extensions(spec, max_occurrences);
  const std::vector<RankingStructure> members(ext.members.begin(), ext.members.end());
  const std::size_t n = members.size();
  if (n > max_members || n > 31) {
    throw Error(ErrorKind::SizeLimit,
                std::to_string(n) + " extensions exceed the subset-search bound of " +
                    std::to_string(std::min<std::size_t>(max_members, 31)));
  }
  if (spec.occurrences.size() > 11) {
    throw Error(ErrorKind::SizeLimit, "carrier too large for pair-mask subset search");
  }

  // Index the ordered pairs of the carrier; every relation becomes a bitset.
  std::map<Edge, std::size_t> pair_index;
  for (const auto& a : spec.occurrences) {
    for (const auto& b : spec.occurrences) {
      if (a != b) pair_index.emplace(Edge{a, b}, pair_index.size());
    }
  }
  constexpr std::size_t kMaxPairs = 128;
  auto mask_of = [&](const Digraph& g) {
    std::bitset<kMaxPairs> m;
    for (const auto& e : g.edges()) m.set(pair_index.at(e));
    return m;
  };
  const std::bitset<kMaxPairs> target_ns = mask_of(spec.nonsimultaneous);
  const std::bitset<kMaxPairs> target_nlt = mask_of(spec.not_later_than);

  std::vector<std::bitset<kMaxPairs>> ns_masks, nlt_masks;
  ns_masks.reserve(n);
  nlt_masks.reserve(n);
  for (const auto& r : members) {
    StratOrder s = from_ranking(r);
    ns_masks.push_back(mask_of(symmetric_closure(s.order)));
    nlt_masks.push_back(mask_of(frown_order(s)));
  }

  // Ascending subset size keeps every accepted subset automatically minimal.
  std::vector<std::uint32_t> qualifying;
  for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
    std::bitset<kMaxPairs> ns, nlt;
    ns.set();
    nlt.set();
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) {
        ns &= ns_masks[i];
        nlt &= nlt_masks[i];
      }
    }
    if (ns == target_ns && nlt == target_nlt) qualifying.push_back(mask);
  }
  std::sort(qualifying.begin(), qualifying.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  std::vector<std::uint32_t> minimal;
  for (std::uint32_t mask : qualifying) {
    bool dominated = false;
    for (std::uint32_t kept : minimal) {
      if ((kept & mask) == kept) {
        dominated = true;
        break;
      }
    }
    if (!dominated) minimal.push_back(mask);
  }

  std::set<std::set<RankingStructure>> out;
  for (std::uint32_t mask : minimal) {
    std::set<RankingStructure> subset;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) subset.insert(members[i]);
    }
    out.insert(std::move(subset));
  }
  return out;
}

}  // namespace gsokit
