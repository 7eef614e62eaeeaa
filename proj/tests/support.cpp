#include "support.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "swapatomic/graph_algorithms.hpp"
#include "swapatomic/preference.hpp"

namespace swapatomic::testing {

namespace {

Outcome random_outcome(std::mt19937_64& rng, const SwapDigraph& d, VertexIndex v) {
  std::uniform_int_distribution<Mask> in(0, d.full_in_mask(v));
  std::uniform_int_distribution<Mask> out(0, d.full_out_mask(v));
  return {v, in(rng), out(rng)};
}

// A strongly connected arc subset covering some but not all vertices.
std::optional<Subgraph> random_proper_component(std::mt19937_64& rng, const SwapDigraph& d) {
  std::bernoulli_distribution keep(0.5);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<ArcIndex> arcs;
    for (ArcIndex a = 0; a < d.arc_count(); ++a) {
      if (keep(rng)) arcs.push_back(a);
    }
    if (arcs.empty()) continue;
    auto h = Subgraph::from_arcs(d, arcs);
    if (h.vertex_count() < d.vertex_count() && strongly_connected_components(d, h).components.size() == 1) return h;
  }
  return std::nullopt;
}

SwapSystem assemble(const SwapDigraph& d, const std::vector<GeneratorPair>& pairs, const std::vector<bool>& rule) {
  SwapSystem s(d);
  for (const auto& p : pairs) s.add_generator(p);
  for (VertexIndex v = 0; v < d.vertex_count(); ++v) s.set_underwater_rule(v, rule[v]);
  return s;
}

}  // namespace

SwapSystem random_system(std::mt19937_64& rng, const RandomSystemOptions& options) {
  std::uniform_int_distribution<unsigned> nv(options.min_vertices, options.max_vertices);
  for (;;) {
    const unsigned n = nv(rng);
    std::vector<std::string> ids;
    for (unsigned i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> all;
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j) {
        if (i != j) all.emplace_back(ids[i], ids[j]);
      }
    }
    std::shuffle(all.begin(), all.end(), rng);
    const unsigned cap = std::min<unsigned>(options.max_arcs, static_cast<unsigned>(all.size()));
    if (cap < n) continue;
    std::uniform_int_distribution<unsigned> na(n, cap);
    all.resize(na(rng));
    DigraphLimits relaxed;
    relaxed.require_assumptions = false;
    SwapDigraph d = SwapDigraph::build(ids, all, relaxed);
    if (!d.assumption_violations().empty()) continue;

    std::vector<bool> rule(n, false);
    std::bernoulli_distribution underwater(0.2);
    for (unsigned v = 0; v < n; ++v) rule[v] = underwater(rng);

    std::vector<GeneratorPair> pairs;
    // Members of a smaller exchange may all prefer it to Deal, the shape that
    // makes a system fail.
    std::bernoulli_distribution coalition(options.coalition_chance);
    for (int round = 0; round < 2 && coalition(rng); ++round) {
      if (const auto h = random_proper_component(rng, d)) {
        for (auto v : h->vertex_list()) {
          const auto sub = deal_outcome(d, *h, v);
          if (sub == full_deal(d, v)) continue;
          pairs.push_back({full_deal(d, v), sub});
          if (!VertexPoset(assemble(d, pairs, rule), v).cycle().empty()) pairs.pop_back();
        }
      }
    }
    std::uniform_int_distribution<unsigned> ng(0, options.max_generators);
    std::bernoulli_distribution from_deal(0.4);
    for (VertexIndex v = 0; v < n; ++v) {
      const unsigned want = ng(rng);
      unsigned kept = 0;
      for (unsigned attempt = 0; attempt < 4 * want && kept < want; ++attempt) {
        GeneratorPair p{random_outcome(rng, d, v), random_outcome(rng, d, v)};
        if (from_deal(rng)) p.worse = full_deal(d, v);
        if (p.worse == p.better) continue;
        pairs.push_back(p);
        if (VertexPoset(assemble(d, pairs, rule), v).cycle().empty()) {
          ++kept;
        } else {
          pairs.pop_back();
        }
      }
    }
    SwapSystem s = assemble(d, pairs, rule);
    if (validate_system(s).empty()) return s;
  }
}

std::vector<std::vector<bool>> reachability(const SwapDigraph& d, const Subgraph& g) {
  const std::size_t n = d.vertex_count();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t v = 0; v < n; ++v) r[v][v] = true;
  for (ArcIndex a : g.arc_list()) r[d.arc(a).from][d.arc(a).to] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!r[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (r[k][j]) r[i][j] = true;
      }
    }
  }
  return r;
}

Outcome outcome_at(const SwapDigraph& d, VertexIndex v, std::size_t index) {
  const unsigned din = d.in_degree(v);
  return {v, static_cast<Mask>(index & ((std::size_t{1} << din) - 1)), static_cast<Mask>(index >> din)};
}

std::vector<std::vector<bool>> naive_leq_matrix(const SwapSystem& system, VertexIndex v) {
  const SwapDigraph& d = system.digraph();
  const unsigned din = d.in_degree(v);
  const std::size_t n = std::size_t{1} << (din + d.out_degree(v));
  auto idx = [&](const Outcome& o) { return static_cast<std::size_t>(o.in | (o.out << din)); };
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  const std::size_t nd = idx(no_deal(v));
  for (std::size_t i = 0; i < n; ++i) {
    const Outcome a = outcome_at(d, v, i);
    for (std::size_t j = 0; j < n; ++j) {
      if (generic_leq(d, a, outcome_at(d, v, j))) r[i][j] = true;
    }
    if (system.underwater_rule(v) && is_underwater(d, a)) r[i][nd] = true;
  }
  for (const auto& p : system.generators(v)) r[idx(p.worse)][idx(p.better)] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!r[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (r[k][j]) r[i][j] = true;
      }
    }
  }
  return r;
}

std::vector<std::vector<VertexIndex>> simple_paths(const SwapDigraph& d, const Subgraph& g) {
  std::vector<std::vector<VertexIndex>> out;
  std::vector<VertexIndex> path;
  std::vector<bool> on(d.vertex_count(), false);
  std::function<void(VertexIndex)> extend = [&](VertexIndex v) {
    for (ArcIndex a : d.out_arcs(v)) {
      const VertexIndex w = d.arc(a).to;
      if (!g.has_arc(a) || on[w]) continue;
      path.push_back(w);
      on[w] = true;
      out.push_back(path);
      extend(w);
      on[w] = false;
      path.pop_back();
    }
  };
  for (VertexIndex v : g.vertex_list()) {
    path = {v};
    on[v] = true;
    extend(v);
    on[v] = false;
  }
  return out;
}

namespace {

// 0 unassigned, 1 true, -1 false.
bool dpll_rec(const CnfFormula& f, std::vector<int>& value) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& clause : f.clauses) {
      int open = 0;
      const CnfLiteral* last = nullptr;
      bool sat = false;
      for (const auto& lit : clause) {
        const int x = value[lit.var];
        if (x == 0) {
          ++open;
          last = &lit;
        } else if ((x > 0) != lit.negated) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (open == 0) return false;
      if (open == 1) {
        value[last->var] = last->negated ? -1 : 1;
        changed = true;
      }
    }
  }
  for (int var = 1; var <= f.num_vars; ++var) {
    if (value[var] != 0) continue;
    for (int choice : {1, -1}) {
      std::vector<int> next = value;
      next[var] = choice;
      if (dpll_rec(f, next)) return true;
    }
    return false;
  }
  return true;
}

}  // namespace

bool dpll(const CnfFormula& f) {
  std::vector<int> value(f.num_vars + 1, 0);
  return dpll_rec(f, value);
}

bool eadnf_oracle(const EadnfFormula& f) {
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << f.k); ++x) {
    bool all_y = true;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << f.l) && all_y; ++y) {
      bool any = false;
      for (const auto& term : f.terms) {
        bool t = true;
        for (const auto& lit : term) {
          const bool bit = ((lit.is_x ? x : y) >> (lit.var - 1)) & 1;
          if (bit == lit.negated) t = false;
        }
        any = any || t;
      }
      all_y = any;
    }
    if (all_y) return true;
  }
  return false;
}

CnfFormula random_cnf(std::mt19937_64& rng, int max_vars, int max_clauses) {
  CnfFormula f;
  f.num_vars = std::uniform_int_distribution<int>(1, max_vars)(rng);
  const int m = std::uniform_int_distribution<int>(1, max_clauses)(rng);
  std::bernoulli_distribution coin(0.5);
  for (int c = 0; c < m; ++c) {
    std::vector<int> vars(f.num_vars);
    for (int i = 0; i < f.num_vars; ++i) vars[i] = i + 1;
    std::shuffle(vars.begin(), vars.end(), rng);
    vars.resize(std::uniform_int_distribution<int>(1, std::min(3, f.num_vars))(rng));
    std::vector<CnfLiteral> clause;
    for (int v : vars) clause.push_back({v, coin(rng)});
    f.clauses.push_back(clause);
  }
  return f;
}

EadnfFormula random_eadnf3(std::mt19937_64& rng, int max_total_vars, int max_terms) {
  EadnfFormula f;
  for (;;) {
    f.k = std::uniform_int_distribution<int>(1, max_total_vars - 1)(rng);
    f.l = std::uniform_int_distribution<int>(1, max_total_vars - f.k)(rng);
    if (f.k + f.l >= 3) break;
  }
  const int m = std::uniform_int_distribution<int>(1, max_terms)(rng);
  std::bernoulli_distribution coin(0.5);
  for (int t = 0; t < m; ++t) {
    // Three distinct variables, at least one universal.
    std::vector<EadnfLiteral> pool;
    for (int i = 1; i <= f.k; ++i) pool.push_back({true, i, false});
    for (int i = 1; i <= f.l; ++i) pool.push_back({false, i, false});
    std::vector<EadnfLiteral> term;
    do {
      std::shuffle(pool.begin(), pool.end(), rng);
      term.assign(pool.begin(), pool.begin() + 3);
    } while (std::all_of(term.begin(), term.end(), [](const EadnfLiteral& l) { return l.is_x; }));
    for (auto& lit : term) lit.negated = coin(rng);
    f.terms.push_back(term);
  }
  return f;
}

}  // namespace swapatomic::testing
