#pragma once

#include <string>
#include <vector>

#include "swapatomic/core_model.hpp"

namespace swapatomic {

enum class Ordering { kLess, kEqual, kGreater, kIncomparable };
std::string to_string(Ordering o);

// The monotone part of the generic relation: a gets no more and pays no less.
inline bool monotone_leq(const Outcome& a, const Outcome& b) {
  return a.owner == b.owner && (a.in & ~b.in) == 0 && (b.out & ~a.out) == 0;
}

// One generic step: monotone_leq, or NoDeal below Deal.
bool generic_leq(const SwapDigraph& d, const Outcome& a, const Outcome& b);

enum OutcomeClass : unsigned {
  kClassDeal = 1u << 0,
  kClassNoDeal = 1u << 1,
  kClassDiscount = 1u << 2,
  kClassFreeRide = 1u << 3,
  kClassUnderwater = 1u << 4,
};
using ClassFlags = unsigned;

ClassFlags classify_outcome(const SwapDigraph& d, const Outcome& o);
std::vector<std::string> class_names(ClassFlags flags);

inline bool is_underwater(const SwapDigraph& d, const Outcome& o) {
  return o.in != d.full_in_mask(o.owner) && o.out != 0;
}

// Outcomes are enumerated explicitly, so din+dout is capped.
inline constexpr unsigned kEnumerationDegreeCap = 20;

// D together with the pairs {w < NoDeal : w Underwater}, written out.
SwapSystem h_closure(const SwapDigraph& d, unsigned degree_cap = kEnumerationDegreeCap);
// The same preferences through the underwater rule, with no degree cap.
SwapSystem h_swap_system(const SwapDigraph& d);

// The up-set {w : source <= w} of one outcome.
class UpperSet {
 public:
  UpperSet() = default;
  explicit UpperSet(std::vector<Outcome> anchors) : anchors_(std::move(anchors)) {}

  bool contains(const Outcome& o) const {
    for (const auto& a : anchors_) {
      if (monotone_leq(a, o)) return true;
    }
    return false;
  }
  const std::vector<Outcome>& anchors() const { return anchors_; }

 private:
  std::vector<Outcome> anchors_;  // minimal elements under monotone_leq
};

// Preference order of a single vertex without enumerating its outcomes.
// The order is the transitive closure of monotone steps, NoDeal below Deal,
// the declared pairs, and (under the underwater rule) Underwater below NoDeal.
// Every non-monotone step starts at one of finitely many key outcomes, so
// reachability only has to be tracked on those.
class VertexPoset {
 public:
  VertexPoset(const SwapSystem& system, VertexIndex v);

  VertexIndex owner() const { return owner_; }
  UpperSet upper_set(const Outcome& source) const;
  bool leq(const Outcome& a, const Outcome& b) const;
  Ordering compare(const Outcome& a, const Outcome& b) const;

  // Empty when antisymmetric; otherwise names the outcomes on one cycle.
  const std::vector<Outcome>& cycle() const { return cycle_; }

 private:
  VertexIndex owner_;
  Mask full_in_;
  bool underwater_rule_;
  std::vector<Outcome> keys_;
  std::vector<std::vector<std::size_t>> jumps_;  // non-monotone edges between keys
  std::size_t no_deal_key_ = 0;
  std::vector<Outcome> cycle_;
};

class PreferenceEngine {
 public:
  explicit PreferenceEngine(const SwapSystem& system);

  const SwapSystem& system() const { return *system_; }
  const VertexPoset& vertex(VertexIndex v) const { return posets_.at(v); }

  Ordering compare(const Outcome& a, const Outcome& b) const;
  bool leq(const Outcome& a, const Outcome& b) const { return vertex(a.owner).leq(a, b); }
  // NoDeal <= o.
  bool is_acceptable(const Outcome& o) const { return acceptable_.at(o.owner).contains(o); }
  const UpperSet& acceptable_set(VertexIndex v) const { return acceptable_.at(v); }

 private:
  const SwapSystem* system_;
  std::vector<VertexPoset> posets_;
  std::vector<UpperSet> acceptable_;
};

struct SystemViolation {
  std::string vertex;  // empty for digraph-level violations
  std::string message;
};

// Digraph assumption violations plus preference cycles.
std::vector<SystemViolation> validate_system(const SwapSystem& system, const DigraphLimits& limits = {});

// Explicit graph over all 2^(din+dout) outcomes of one vertex, with an edge for
// every single-arc monotone move and every non-monotone step. Used to
// cross-check VertexPoset and for small-vertex inspection.
class OutcomeRelation {
 public:
  OutcomeRelation(const SwapSystem& system, VertexIndex v, unsigned degree_cap = kEnumerationDegreeCap);

  std::size_t node_count() const { return adjacency_.size(); }
  bool leq(const Outcome& a, const Outcome& b) const;
  Ordering compare(const Outcome& a, const Outcome& b) const;
  bool is_acyclic() const;
  std::vector<Outcome> all_outcomes() const;

 private:
  std::size_t index(const Outcome& o) const { return static_cast<std::size_t>(o.in | (o.out << din_)); }

  VertexIndex owner_;
  unsigned din_;
  unsigned dout_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
};

}  // namespace swapatomic
