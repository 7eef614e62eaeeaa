#pragma once

#include <vector>

#include "swapatomic/core_model.hpp"

namespace swapatomic {

// Components of a subgraph. Members are sorted by vertex id and components by
// their smallest member id.
struct SccPartition {
  std::vector<std::vector<VertexIndex>> components;
};

SccPartition strongly_connected_components(const SwapDigraph& d, const Subgraph& g);
SccPartition weakly_connected_components(const SwapDigraph& d, const Subgraph& g);

// Every weak component is strongly connected and no vertex of g is isolated.
bool is_piecewise_strongly_connected(const SwapDigraph& d, const Subgraph& g);

std::vector<std::vector<std::string>> component_ids(const SwapDigraph& d, const SccPartition& p);

// Reusable scratch space for the hot path of the atomicity search. Works on
// spanning subgraphs given as arc flags.
class PiecewiseChecker {
 public:
  explicit PiecewiseChecker(const SwapDigraph& d);
  bool check(const std::vector<bool>& arc_flags);

 private:
  const SwapDigraph* d_;
  std::vector<int> comp_;
  std::vector<bool> all_;
  std::vector<VertexIndex> order_;
  std::vector<VertexIndex> stack_;
  std::vector<unsigned> cursor_;
  std::vector<bool> seen_;
};

}  // namespace swapatomic
