#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace swapatomic {

using VertexIndex = std::uint32_t;
using ArcIndex = std::uint32_t;
// Bit i refers to the i-th entry of a vertex's in- or out-adjacency list.
using Mask = std::uint64_t;

inline constexpr unsigned kMaxSideDegree = 64;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or semantically invalid input text. line/column are 1-based and
// zero when the error is not tied to a text position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A model object would break one of its structural invariants.
class ModelError : public Error {
 public:
  using Error::Error;
};

struct Arc {
  VertexIndex from = 0;
  VertexIndex to = 0;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

struct DigraphLimits {
  // Cap on din(v) + dout(v). Zero means only the mask width limit applies.
  unsigned max_total_degree = 0;
  // Enforce |V| >= 2, nonempty in/out lists and weak connectivity.
  bool require_assumptions = true;
};

// Immutable directed graph. Arcs are stored in canonical order: sorted by
// (from id, to id) comparing vertex ids as strings. Adjacency lists are
// sorted by neighbor id, which fixes the bit layout of outcome masks.
class SwapDigraph {
 public:
  SwapDigraph() = default;

  static SwapDigraph build(std::vector<std::string> vertex_ids,
                           const std::vector<std::pair<std::string, std::string>>& arcs,
                           const DigraphLimits& limits = {});

  std::size_t vertex_count() const { return ids_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }

  const std::string& id(VertexIndex v) const { return ids_.at(v); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::optional<VertexIndex> find(std::string_view id) const;
  VertexIndex index_of(std::string_view id) const;  // throws ModelError

  const Arc& arc(ArcIndex a) const { return arcs_.at(a); }
  std::span<const Arc> arcs() const { return arcs_; }
  std::optional<ArcIndex> find_arc(VertexIndex from, VertexIndex to) const;

  std::span<const ArcIndex> in_arcs(VertexIndex v) const { return in_arcs_.at(v); }
  std::span<const ArcIndex> out_arcs(VertexIndex v) const { return out_arcs_.at(v); }
  unsigned in_degree(VertexIndex v) const { return static_cast<unsigned>(in_arcs_.at(v).size()); }
  unsigned out_degree(VertexIndex v) const { return static_cast<unsigned>(out_arcs_.at(v).size()); }

  // Bit position of arc a in the in-list of its head / out-list of its tail.
  unsigned in_position(ArcIndex a) const { return in_pos_.at(a); }
  unsigned out_position(ArcIndex a) const { return out_pos_.at(a); }

  Mask full_in_mask(VertexIndex v) const;
  Mask full_out_mask(VertexIndex v) const;

  // Violations of the modeling assumptions, empty when all hold.
  std::vector<std::string> assumption_violations(const DigraphLimits& limits = {}) const;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, VertexIndex> by_id_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcIndex>> in_arcs_;
  std::vector<std::vector<ArcIndex>> out_arcs_;
  std::vector<unsigned> in_pos_;
  std::vector<unsigned> out_pos_;
};

struct Outcome {
  VertexIndex owner = 0;
  Mask in = 0;
  Mask out = 0;
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct OutcomeHash {
  std::size_t operator()(const Outcome& o) const noexcept;
};

Outcome no_deal(VertexIndex v);
Outcome full_deal(const SwapDigraph& d, VertexIndex v);
bool is_valid_outcome(const SwapDigraph& d, const Outcome& o);

// Builds an outcome from neighbor ids. Throws ModelError on unknown arcs.
Outcome make_outcome(const SwapDigraph& d, std::string_view owner,
                     const std::vector<std::string>& in_from,
                     const std::vector<std::string>& out_to);
std::vector<std::string> in_neighbors(const SwapDigraph& d, const Outcome& o);
std::vector<std::string> out_neighbors(const SwapDigraph& d, const Outcome& o);
// Human-readable form such as <u,v|w>.
std::string format_outcome(const SwapDigraph& d, const Outcome& o);

// worse strictly below better.
struct GeneratorPair {
  Outcome worse;
  Outcome better;
  friend bool operator==(const GeneratorPair&, const GeneratorPair&) = default;
};

// A vertex subset together with an arc subset whose endpoints lie in it.
class Subgraph {
 public:
  Subgraph() = default;
  Subgraph(const SwapDigraph& d, std::vector<bool> vertices, std::vector<bool> arcs);

  static Subgraph empty(const SwapDigraph& d);
  static Subgraph full(const SwapDigraph& d);
  // All vertices, the given arcs.
  static Subgraph spanning(const SwapDigraph& d, const std::vector<ArcIndex>& arcs);
  // Vertex set is the set of arc endpoints.
  static Subgraph from_arcs(const SwapDigraph& d, const std::vector<ArcIndex>& arcs);

  bool has_vertex(VertexIndex v) const { return vertices_.at(v); }
  bool has_arc(ArcIndex a) const { return arcs_.at(a); }
  const std::vector<bool>& vertex_flags() const { return vertices_; }
  const std::vector<bool>& arc_flags() const { return arcs_; }
  std::vector<ArcIndex> arc_list() const;
  std::vector<VertexIndex> vertex_list() const;
  std::size_t arc_count() const;
  std::size_t vertex_count() const;
  bool is_spanning() const;

  friend bool operator==(const Subgraph&, const Subgraph&) = default;

 private:
  std::vector<bool> vertices_;
  std::vector<bool> arcs_;
};

// Deal^G_v: the arcs of G entering and leaving v.
Outcome deal_outcome(const SwapDigraph& d, const Subgraph& g, VertexIndex v);

class SwapSystem {
 public:
  SwapSystem() = default;
  explicit SwapSystem(SwapDigraph digraph);

  const SwapDigraph& digraph() const { return digraph_; }

  void add_generator(const GeneratorPair& pair);  // throws ModelError if malformed
  const std::vector<GeneratorPair>& generators(VertexIndex v) const { return generators_.at(v); }
  std::size_t generator_count() const;

  // Vertices whose preferences also place every Underwater outcome below
  // NoDeal, without listing those pairs explicitly.
  void set_underwater_rule(VertexIndex v, bool on);
  bool underwater_rule(VertexIndex v) const { return underwater_rule_.at(v); }

 private:
  SwapDigraph digraph_;
  std::vector<std::vector<GeneratorPair>> generators_;
  std::vector<bool> underwater_rule_;
};

struct ParseOptions {
  DigraphLimits limits{};
};

SwapSystem parse_swap_system(std::string_view text, const ParseOptions& options = {});
SwapSystem load_swap_system(const std::string& path, const ParseOptions& options = {});
// Canonical JSON: sorted keys, arcs in canonical order, two-space indent.
std::string serialize_swap_system(const SwapSystem& system);

// Arcs the search may treat as fixed, used by reduction outputs.
struct FrozenArcs {
  std::vector<ArcIndex> in;   // forced into G
  std::vector<ArcIndex> out;  // forced out of G
};

// Reads the optional "search_hints" object of a system file.
FrozenArcs parse_search_hints(std::string_view text, const SwapDigraph& d);
std::string serialize_swap_system(const SwapSystem& system, const FrozenArcs& hints);

std::string read_text_file(const std::string& path);

}  // namespace swapatomic
