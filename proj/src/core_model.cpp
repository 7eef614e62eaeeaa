#include "swapatomic/core_model.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace swapatomic {

using nlohmann::json;

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(line == 0 ? message
                      : message + " (line " + std::to_string(line) + ", column " +
                            std::to_string(column) + ")"),
      line_(line),
      column_(column) {}

namespace {

Mask low_bits(unsigned n) { return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1); }

bool valid_id(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](unsigned char c) { return c > 0x20 && c != 0x7f; });
}

}  // namespace

SwapDigraph SwapDigraph::build(std::vector<std::string> vertex_ids,
                               const std::vector<std::pair<std::string, std::string>>& arcs,
                               const DigraphLimits& limits) {
  SwapDigraph d;
  d.ids_ = std::move(vertex_ids);
  for (std::size_t i = 0; i < d.ids_.size(); ++i) {
    const auto& id = d.ids_[i];
    if (!valid_id(id)) throw ModelError("invalid vertex id '" + id + "'");
    if (!d.by_id_.emplace(id, static_cast<VertexIndex>(i)).second) {
      throw ModelError("duplicate vertex '" + id + "'");
    }
  }

  std::vector<std::pair<std::string, std::string>> sorted = arcs;
  for (const auto& [from, to] : sorted) {
    if (!d.by_id_.count(from)) throw ModelError("arc (" + from + "," + to + "): unknown vertex '" + from + "'");
    if (!d.by_id_.count(to)) throw ModelError("arc (" + from + "," + to + "): unknown vertex '" + to + "'");
    if (from == to) throw ModelError("self-loop on '" + from + "'");
  }
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw ModelError("duplicate arc (" + dup->first + "," + dup->second + ")");

  const std::size_t n = d.ids_.size();
  d.arcs_.reserve(sorted.size());
  for (const auto& [from, to] : sorted) d.arcs_.push_back({d.by_id_.at(from), d.by_id_.at(to)});

  d.in_arcs_.assign(n, {});
  d.out_arcs_.assign(n, {});
  // Canonical arc order already sorts each out-list by head id.
  for (ArcIndex a = 0; a < d.arcs_.size(); ++a) {
    d.out_arcs_[d.arcs_[a].from].push_back(a);
    d.in_arcs_[d.arcs_[a].to].push_back(a);
  }
  for (auto& list : d.in_arcs_) {
    std::sort(list.begin(), list.end(), [&d](ArcIndex x, ArcIndex y) {
      return d.ids_[d.arcs_[x].from] < d.ids_[d.arcs_[y].from];
    });
  }
  d.in_pos_.assign(d.arcs_.size(), 0);
  d.out_pos_.assign(d.arcs_.size(), 0);
  for (VertexIndex v = 0; v < n; ++v) {
    if (d.in_arcs_[v].size() > kMaxSideDegree || d.out_arcs_[v].size() > kMaxSideDegree) {
      throw ModelError("vertex '" + d.ids_[v] + "' exceeds the supported degree of " +
                       std::to_string(kMaxSideDegree) + " per side");
    }
    for (unsigned i = 0; i < d.in_arcs_[v].size(); ++i) d.in_pos_[d.in_arcs_[v][i]] = i;
    for (unsigned i = 0; i < d.out_arcs_[v].size(); ++i) d.out_pos_[d.out_arcs_[v][i]] = i;
  }

  auto violations = d.assumption_violations(limits);
  if (!violations.empty()) throw ModelError(violations.front());
  return d;
}

std::vector<std::string> SwapDigraph::assumption_violations(const DigraphLimits& limits) const {
  std::vector<std::string> out;
  const std::size_t n = ids_.size();
  if (limits.max_total_degree > 0) {
    for (VertexIndex v = 0; v < n; ++v) {
      const auto total = in_arcs_[v].size() + out_arcs_[v].size();
      if (total > limits.max_total_degree) {
        out.push_back("vertex '" + ids_[v] + "' has din+dout=" + std::to_string(total) +
                      " above the cap of " + std::to_string(limits.max_total_degree));
      }
    }
  }
  if (!limits.require_assumptions) return out;
  if (n < 2) out.push_back("a swap digraph needs at least two vertices");
  for (VertexIndex v = 0; v < n; ++v) {
    if (in_arcs_[v].empty()) out.push_back("vertex '" + ids_[v] + "' has no incoming arc");
    if (out_arcs_[v].empty()) out.push_back("vertex '" + ids_[v] + "' has no outgoing arc");
  }
  if (n > 0) {
    std::vector<std::vector<VertexIndex>> undirected(n);
    for (const auto& a : arcs_) {
      undirected[a.from].push_back(a.to);
      undirected[a.to].push_back(a.from);
    }
    std::vector<bool> seen(n, false);
    std::vector<VertexIndex> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : undirected[v]) {
        if (!seen[w]) {
          seen[w] = true;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached != n) out.push_back("the swap digraph is not weakly connected");
  }
  return out;
}

std::optional<VertexIndex> SwapDigraph::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

VertexIndex SwapDigraph::index_of(std::string_view id) const {
  auto v = find(id);
  if (!v) throw ModelError("unknown vertex '" + std::string(id) + "'");
  return *v;
}

std::optional<ArcIndex> SwapDigraph::find_arc(VertexIndex from, VertexIndex to) const {
  if (from >= out_arcs_.size()) return std::nullopt;
  for (auto a : out_arcs_[from]) {
    if (arcs_[a].to == to) return a;
  }
  return std::nullopt;
}

Mask SwapDigraph::full_in_mask(VertexIndex v) const { return low_bits(in_degree(v)); }
Mask SwapDigraph::full_out_mask(VertexIndex v) const { return low_bits(out_degree(v)); }

std::size_t OutcomeHash::operator()(const Outcome& o) const noexcept {
  std::size_t h = std::hash<Mask>{}(o.in);
  h ^= std::hash<Mask>{}(o.out) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= std::hash<VertexIndex>{}(o.owner) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

Outcome no_deal(VertexIndex v) { return {v, 0, 0}; }

Outcome full_deal(const SwapDigraph& d, VertexIndex v) {
  return {v, d.full_in_mask(v), d.full_out_mask(v)};
}

bool is_valid_outcome(const SwapDigraph& d, const Outcome& o) {
  if (o.owner >= d.vertex_count()) return false;
  return (o.in & ~d.full_in_mask(o.owner)) == 0 && (o.out & ~d.full_out_mask(o.owner)) == 0;
}

Outcome make_outcome(const SwapDigraph& d, std::string_view owner,
                     const std::vector<std::string>& in_from,
                     const std::vector<std::string>& out_to) {
  Outcome o{d.index_of(owner), 0, 0};
  for (const auto& u : in_from) {
    auto a = d.find_arc(d.index_of(u), o.owner);
    if (!a) throw ModelError("no arc (" + u + "," + std::string(owner) + ")");
    o.in |= Mask{1} << d.in_position(*a);
  }
  for (const auto& w : out_to) {
    auto a = d.find_arc(o.owner, d.index_of(w));
    if (!a) throw ModelError("no arc (" + std::string(owner) + "," + w + ")");
    o.out |= Mask{1} << d.out_position(*a);
  }
  return o;
}

std::vector<std::string> in_neighbors(const SwapDigraph& d, const Outcome& o) {
  std::vector<std::string> out;
  auto arcs = d.in_arcs(o.owner);
  for (unsigned i = 0; i < arcs.size(); ++i) {
    if (o.in >> i & 1) out.push_back(d.id(d.arc(arcs[i]).from));
  }
  return out;
}

std::vector<std::string> out_neighbors(const SwapDigraph& d, const Outcome& o) {
  std::vector<std::string> out;
  auto arcs = d.out_arcs(o.owner);
  for (unsigned i = 0; i < arcs.size(); ++i) {
    if (o.out >> i & 1) out.push_back(d.id(d.arc(arcs[i]).to));
  }
  return out;
}

std::string format_outcome(const SwapDigraph& d, const Outcome& o) {
  auto join = [](const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i];
    return s;
  };
  return "<" + join(in_neighbors(d, o)) + "|" + join(out_neighbors(d, o)) + ">";
}

Subgraph::Subgraph(const SwapDigraph& d, std::vector<bool> vertices, std::vector<bool> arcs)
    : vertices_(std::move(vertices)), arcs_(std::move(arcs)) {
  if (vertices_.size() != d.vertex_count() || arcs_.size() != d.arc_count()) {
    throw ModelError("subgraph flag vectors do not match the digraph");
  }
  for (ArcIndex a = 0; a < arcs_.size(); ++a) {
    if (arcs_[a] && (!vertices_[d.arc(a).from] || !vertices_[d.arc(a).to])) {
      throw ModelError("subgraph arc (" + d.id(d.arc(a).from) + "," + d.id(d.arc(a).to) +
                       ") has an endpoint outside the vertex set");
    }
  }
}

Subgraph Subgraph::empty(const SwapDigraph& d) {
  return Subgraph(d, std::vector<bool>(d.vertex_count(), false), std::vector<bool>(d.arc_count(), false));
}

Subgraph Subgraph::full(const SwapDigraph& d) {
  return Subgraph(d, std::vector<bool>(d.vertex_count(), true), std::vector<bool>(d.arc_count(), true));
}

Subgraph Subgraph::spanning(const SwapDigraph& d, const std::vector<ArcIndex>& arcs) {
  std::vector<bool> flags(d.arc_count(), false);
  for (auto a : arcs) flags.at(a) = true;
  return Subgraph(d, std::vector<bool>(d.vertex_count(), true), std::move(flags));
}

Subgraph Subgraph::from_arcs(const SwapDigraph& d, const std::vector<ArcIndex>& arcs) {
  std::vector<bool> vflags(d.vertex_count(), false);
  std::vector<bool> aflags(d.arc_count(), false);
  for (auto a : arcs) {
    aflags.at(a) = true;
    vflags[d.arc(a).from] = true;
    vflags[d.arc(a).to] = true;
  }
  return Subgraph(d, std::move(vflags), std::move(aflags));
}

std::vector<ArcIndex> Subgraph::arc_list() const {
  std::vector<ArcIndex> out;
  for (ArcIndex a = 0; a < arcs_.size(); ++a) {
    if (arcs_[a]) out.push_back(a);
  }
  return out;
}

std::vector<VertexIndex> Subgraph::vertex_list() const {
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v]) out.push_back(v);
  }
  return out;
}

std::size_t Subgraph::arc_count() const { return std::count(arcs_.begin(), arcs_.end(), true); }
std::size_t Subgraph::vertex_count() const { return std::count(vertices_.begin(), vertices_.end(), true); }
bool Subgraph::is_spanning() const { return std::all_of(vertices_.begin(), vertices_.end(), [](bool b) { return b; }); }

Outcome deal_outcome(const SwapDigraph& d, const Subgraph& g, VertexIndex v) {
  if (!g.has_vertex(v)) throw ModelError("vertex '" + d.id(v) + "' is not in the subgraph");
  Outcome o{v, 0, 0};
  auto ins = d.in_arcs(v);
  for (unsigned i = 0; i < ins.size(); ++i) {
    if (g.has_arc(ins[i])) o.in |= Mask{1} << i;
  }
  auto outs = d.out_arcs(v);
  for (unsigned i = 0; i < outs.size(); ++i) {
    if (g.has_arc(outs[i])) o.out |= Mask{1} << i;
  }
  return o;
}

SwapSystem::SwapSystem(SwapDigraph digraph)
    : digraph_(std::move(digraph)),
      generators_(digraph_.vertex_count()),
      underwater_rule_(digraph_.vertex_count(), false) {}

void SwapSystem::add_generator(const GeneratorPair& pair) {
  if (pair.worse.owner != pair.better.owner) throw ModelError("generator pair spans two vertices");
  if (!is_valid_outcome(digraph_, pair.worse) || !is_valid_outcome(digraph_, pair.better)) {
    throw ModelError("generator pair references arcs the vertex does not have");
  }
  if (pair.worse == pair.better) {
    throw ModelError("generator pair on '" + digraph_.id(pair.worse.owner) + "' compares an outcome with itself");
  }
  generators_.at(pair.worse.owner).push_back(pair);
}

std::size_t SwapSystem::generator_count() const {
  std::size_t n = 0;
  for (const auto& g : generators_) n += g.size();
  return n;
}

void SwapSystem::set_underwater_rule(VertexIndex v, bool on) { underwater_rule_.at(v) = on; }

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    auto pos = what.find("syntax error");
    throw ParseError(pos == std::string::npos ? what : what.substr(pos), line, column);
  }
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a string");
  return j.get<std::string>();
}

std::vector<std::string> as_string_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of vertex ids");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::pair<std::string, std::string>> as_arc_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of arcs");
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& pair = j[i];
    const auto at = where + "[" + std::to_string(i) + "]";
    if (!pair.is_array() || pair.size() != 2) throw ParseError(at + ": an arc is a two-element array");
    out.emplace_back(as_string(pair[0], at), as_string(pair[1], at));
  }
  return out;
}

Outcome parse_outcome(const json& j, const SwapDigraph& d, VertexIndex owner, const std::string& where) {
  if (j.is_string()) {
    const auto token = j.get<std::string>();
    if (token == "DEAL") return full_deal(d, owner);
    if (token == "NODEAL") return no_deal(owner);
    throw ParseError(where + ": unknown outcome token '" + token + "'");
  }
  if (!j.is_object()) throw ParseError(where + ": expected an outcome object");
  for (const auto& [key, _] : j.items()) {
    if (key != "in" && key != "out") throw ParseError(where + ": unexpected key '" + key + "'");
  }
  std::vector<std::string> ins = j.contains("in") ? as_string_list(j["in"], where + ".in") : std::vector<std::string>{};
  std::vector<std::string> outs = j.contains("out") ? as_string_list(j["out"], where + ".out") : std::vector<std::string>{};
  for (const auto& u : ins) {
    if (!d.find(u)) throw ParseError(where + ".in: unknown vertex '" + u + "'");
  }
  for (const auto& w : outs) {
    if (!d.find(w)) throw ParseError(where + ".out: unknown vertex '" + w + "'");
  }
  try {
    return make_outcome(d, d.id(owner), ins, outs);
  } catch (const ModelError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

json outcome_to_json(const SwapDigraph& d, const Outcome& o) {
  if (o == full_deal(d, o.owner)) return "DEAL";
  if (o == no_deal(o.owner)) return "NODEAL";
  return json{{"in", in_neighbors(d, o)}, {"out", out_neighbors(d, o)}};
}

json arcs_to_json(const SwapDigraph& d, std::vector<ArcIndex> arcs) {
  std::sort(arcs.begin(), arcs.end());
  json out = json::array();
  for (auto a : arcs) out.push_back({d.id(d.arc(a).from), d.id(d.arc(a).to)});
  return out;
}

}  // namespace

SwapSystem parse_swap_system(std::string_view text, const ParseOptions& options) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("a swap system file is a JSON object");
  static const std::set<std::string> known = {"vertices", "arcs", "generators", "h_vertices", "search_hints",
                                              "description"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.count(key)) throw ParseError("unexpected top-level key '" + key + "'");
  }
  if (!doc.contains("vertices")) throw ParseError("missing 'vertices'");
  if (!doc.contains("arcs")) throw ParseError("missing 'arcs'");

  auto vertices = as_string_list(doc["vertices"], "vertices");
  auto arcs = as_arc_list(doc["arcs"], "arcs");
  std::set<std::string> names(vertices.begin(), vertices.end());
  for (const auto& [from, to] : arcs) {
    if (!names.count(from)) throw ParseError("arcs: unknown vertex '" + from + "'");
    if (!names.count(to)) throw ParseError("arcs: unknown vertex '" + to + "'");
  }

  SwapDigraph d;
  try {
    d = SwapDigraph::build(std::move(vertices), arcs, options.limits);
  } catch (const ModelError& e) {
    throw ParseError(e.what());
  }
  SwapSystem system(std::move(d));
  const auto& dg = system.digraph();

  if (doc.contains("generators")) {
    const auto& gens = doc["generators"];
    if (!gens.is_object()) throw ParseError("generators: expected an object keyed by vertex id");
    // Preserve the order generators were written in for vertices listed in file order.
    for (VertexIndex v = 0; v < dg.vertex_count(); ++v) {
      if (!gens.contains(dg.id(v))) continue;
      const auto& list = gens[dg.id(v)];
      const auto where = "generators." + dg.id(v);
      if (!list.is_array()) throw ParseError(where + ": expected an array of pairs");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const auto at = where + "[" + std::to_string(i) + "]";
        const auto& pair = list[i];
        if (!pair.is_object() || !pair.contains("worse") || !pair.contains("better") || pair.size() != 2) {
          throw ParseError(at + ": a generator pair has exactly 'worse' and 'better'");
        }
        GeneratorPair gp{parse_outcome(pair["worse"], dg, v, at + ".worse"),
                         parse_outcome(pair["better"], dg, v, at + ".better")};
        try {
          system.add_generator(gp);
        } catch (const ModelError& e) {
          throw ParseError(at + ": " + e.what());
        }
      }
    }
    for (const auto& [key, _] : gens.items()) {
      if (!dg.find(key)) throw ParseError("generators: unknown vertex '" + key + "'");
    }
  }
  if (doc.contains("h_vertices")) {
    for (const auto& id : as_string_list(doc["h_vertices"], "h_vertices")) {
      auto v = dg.find(id);
      if (!v) throw ParseError("h_vertices: unknown vertex '" + id + "'");
      system.set_underwater_rule(*v, true);
    }
  }
  if (doc.contains("search_hints")) parse_search_hints(text, dg);
  return system;
}

FrozenArcs parse_search_hints(std::string_view text, const SwapDigraph& d) {
  const json doc = parse_json(text);
  FrozenArcs hints;
  if (!doc.is_object() || !doc.contains("search_hints")) return hints;
  const auto& h = doc["search_hints"];
  if (!h.is_object()) throw ParseError("search_hints: expected an object");
  auto read = [&](const char* key, std::vector<ArcIndex>& into) {
    if (!h.contains(key)) return;
    for (const auto& [from, to] : as_arc_list(h[key], std::string("search_hints.") + key)) {
      auto u = d.find(from);
      auto w = d.find(to);
      std::optional<ArcIndex> a;
      if (u && w) a = d.find_arc(*u, *w);
      if (!a) throw ParseError(std::string("search_hints.") + key + ": no arc (" + from + "," + to + ")");
      into.push_back(*a);
    }
  };
  for (const auto& [key, _] : h.items()) {
    if (key != "frozen_in" && key != "frozen_out") throw ParseError("search_hints: unexpected key '" + key + "'");
  }
  read("frozen_in", hints.in);
  read("frozen_out", hints.out);
  return hints;
}

namespace {

json system_to_json(const SwapSystem& system) {
  const auto& d = system.digraph();
  json doc;
  doc["vertices"] = d.ids();
  std::vector<ArcIndex> all(d.arc_count());
  std::iota(all.begin(), all.end(), 0);
  doc["arcs"] = arcs_to_json(d, all);
  json gens = json::object();
  for (VertexIndex v = 0; v < d.vertex_count(); ++v) {
    if (system.generators(v).empty()) continue;
    json list = json::array();
    for (const auto& gp : system.generators(v)) {
      list.push_back({{"worse", outcome_to_json(d, gp.worse)}, {"better", outcome_to_json(d, gp.better)}});
    }
    gens[d.id(v)] = list;
  }
  doc["generators"] = gens;
  std::vector<std::string> h;
  for (VertexIndex v = 0; v < d.vertex_count(); ++v) {
    if (system.underwater_rule(v)) h.push_back(d.id(v));
  }
  if (!h.empty()) doc["h_vertices"] = h;
  return doc;
}

}  // namespace

std::string serialize_swap_system(const SwapSystem& system) { return system_to_json(system).dump(2) + "\n"; }

std::string serialize_swap_system(const SwapSystem& system, const FrozenArcs& hints) {
  json doc = system_to_json(system);
  if (!hints.in.empty() || !hints.out.empty()) {
    json h = json::object();
    if (!hints.in.empty()) h["frozen_in"] = arcs_to_json(system.digraph(), hints.in);
    if (!hints.out.empty()) h["frozen_out"] = arcs_to_json(system.digraph(), hints.out);
    doc["search_hints"] = h;
  }
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SwapSystem load_swap_system(const std::string& path, const ParseOptions& options) {
  return parse_swap_system(read_text_file(path), options);
}

}  // namespace swapatomic
