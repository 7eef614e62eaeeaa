#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "swapatomic/core_model.hpp"
#include "swapatomic/graph_algorithms.hpp"
#include "swapatomic/preference.hpp"

namespace swapatomic {

// h dominates g when every vertex of h does at least as well with h's arcs as
// with g's. g must be spanning.
bool dominates(const PreferenceEngine& engine, const Subgraph& h, const Subgraph& g);
bool strictly_dominates(const PreferenceEngine& engine, const Subgraph& h, const Subgraph& g);

enum class Decision { kYes, kNo, kInconclusive };
std::string to_string(Decision d);

enum class HScope {
  kArcSubsets,  // vertex set is the set of arc endpoints
  kFull,        // any vertex subset with any arcs inside it
};

enum class SearchMode {
  // Backtracking over G and H with best-completion pruning. The first G in
  // counter order satisfying all three conditions is the witness.
  kPruned,
  // Same search, but the first G passing the first two conditions decides:
  // no if anything strictly dominates it.
  kLiteral,
  // All 2^|A| candidates for G and for H, no pruning.
  kExhaustive,
};

struct SearchConfig {
  FrozenArcs frozen;
  HScope h_scope = HScope::kArcSubsets;
  SearchMode mode = SearchMode::kPruned;
  std::optional<double> time_budget_seconds;
  unsigned jobs = 1;
};

struct SearchStats {
  std::uint64_t g_candidates = 0;  // complete G assignments reached
  std::uint64_t g_passing = 0;     // of those, passing connectivity and domination of D
  std::uint64_t h_candidates = 0;  // complete H assignments reached
  double elapsed_seconds = 0;
};

struct AtomicityVerdict {
  Decision decision = Decision::kNo;
  std::optional<Subgraph> witness;
  SccPartition sccs;
  SearchStats stats;
};

AtomicityVerdict decide_atomic(const SwapSystem& system, const SearchConfig& config = {});

// Some H that strictly dominates spanning g, found by the pruned search.
std::optional<Subgraph> find_strict_dominator(const PreferenceEngine& engine, const Subgraph& g,
                                              HScope scope = HScope::kArcSubsets);

struct WitnessCheck {
  bool piecewise_strong = false;
  bool dominates_d = false;
  bool undominated = false;
  // True when the third condition was checked by listing every (W, arcs in W).
  bool exhaustive_h = false;
  std::optional<Subgraph> dominator;
  bool ok() const { return piecewise_strong && dominates_d && undominated; }
};

// Rechecks the three conditions for g. H candidates are listed one by one when
// there are at most max_listed of them, otherwise the pruned full-scope
// search is used.
WitnessCheck verify_witness(const SwapSystem& system, const Subgraph& g,
                            std::uint64_t max_listed = std::uint64_t{1} << 26);

}  // namespace swapatomic
