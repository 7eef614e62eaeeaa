#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "swapatomic/core_model.hpp"
#include "swapatomic/reductions.hpp"

namespace swapatomic::testing {

struct RandomSystemOptions {
  unsigned min_vertices = 2;
  unsigned max_vertices = 4;
  unsigned max_arcs = 8;
  unsigned max_generators = 3;  // per vertex
  double coalition_chance = 0.9;
};

// A random system that passes validate_system. Generators are drawn one at a
// time and dropped when they would close a cycle.
SwapSystem random_system(std::mt19937_64& rng, const RandomSystemOptions& options = {});

// Reachability over explicit arcs of g, Floyd-Warshall style.
std::vector<std::vector<bool>> reachability(const SwapDigraph& d, const Subgraph& g);

// Reflexive transitive closure over every outcome of v, built from
// generic_leq, the declared pairs and the underwater rule. Indexed by
// in | out << din.
std::vector<std::vector<bool>> naive_leq_matrix(const SwapSystem& system, VertexIndex v);
Outcome outcome_at(const SwapDigraph& d, VertexIndex v, std::size_t index);

// Every simple path of g with at least one arc.
std::vector<std::vector<VertexIndex>> simple_paths(const SwapDigraph& d, const Subgraph& g);

// Small DPLL, independent of sat_bruteforce.
bool dpll(const CnfFormula& f);
// Nested loops over the quantifier blocks, independent of eadnf_bruteforce.
bool eadnf_oracle(const EadnfFormula& f);

CnfFormula random_cnf(std::mt19937_64& rng, int max_vars, int max_clauses);
EadnfFormula random_eadnf3(std::mt19937_64& rng, int max_total_vars, int max_terms);

}  // namespace swapatomic::testing
