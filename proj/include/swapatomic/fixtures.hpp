#pragma once

#include <string>
#include <utility>
#include <vector>

#include "swapatomic/core_model.hpp"

namespace swapatomic {

// Generator written with neighbor ids; "DEAL" / "NODEAL" stand for the
// owner's current Deal and NoDeal.
struct NamedOutcome {
  std::vector<std::string> in;
  std::vector<std::string> out;
  bool deal = false;
  bool no_deal = false;
};

inline const NamedOutcome kDealToken{{}, {}, true, false};

struct NamedGenerator {
  std::string owner;
  NamedOutcome worse;
  NamedOutcome better;
};

// Vertex-id level description, convenient for deriving one system from another.
struct SystemSpec {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> arcs;
  std::vector<NamedGenerator> generators;
  std::vector<std::string> h_vertices;

  SwapSystem build(const DigraphLimits& limits = {}) const;
};

// The five benchmark systems. s2 is the four-party system where u and v
// prefer swapping only with each other; s4 and s5 are derived from s3.
SystemSpec fixture_spec(int index);
SwapSystem fixture(int index);

// The digraph of s2 with h-swap preferences for every party.
SwapSystem figure4_h_swap();

// Named subgraphs used in the worked examples.
Subgraph example1_cycle(const SwapSystem& s1);              // (u,w),(w,v),(v,u)
Subgraph example4_g2(const SwapSystem& s3);                 // (u_i,u_j),(v_i,t_i),(t_i,v_j)
Subgraph example4_g3(const SwapSystem& s3);                 // (u_i,v_i),(v_i,u_i),(t_i,t_j)
Subgraph example4_h1(const SwapSystem& s3);                 // (v1,v2),(v2,v1), not spanning
Subgraph arcs_by_name(const SwapSystem& s, const std::vector<std::pair<std::string, std::string>>& arcs,
                      bool spanning);

}  // namespace swapatomic
