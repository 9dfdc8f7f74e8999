#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mcp/instance.hpp"

namespace mcp::flow {

struct MinCutResult {
  std::int64_t value = 0;
  CutSet cut;                // edges crossing (x_side, rest); capacity == value
  std::vector<int> x_side;   // residual-reachable vertices from x (canonical tie-break)
};

// Undirected min (x,y)-cut under the given per-edge capacities (parallel to
// inst.edges). BFS shortest augmenting paths; capacities >= 0, zero-capacity
// edges may sit in the cut at zero contribution.
MinCutResult min_cut(const Instance& inst, std::span<const std::int64_t> capacities,
                     int x, int y);

// Fact-oracle: an (s,t)-cut A disjoint from the defense with omega(A) <= a,
// or nullopt when every such cut is blocked (the defense works, cost aside).
// Protected edges get capacity a+1 so a cheap min cut can never use them.
std::optional<CutSet> avoiding_min_cut(const Instance& inst, const DefenseSet& defense);

// Exact min-cut value for every unordered vertex pair; result[u][v] for u<v.
// Naive n^2 max-flow calls (simplest correct choice at this scale).
std::vector<std::vector<std::int64_t>> all_pairs_min_cut(const Instance& inst);

struct BipartiteCoverResult {
  std::int64_t value = 0;
  std::vector<int> left;   // chosen left elements
  std::vector<int> right;  // chosen right elements
};

// Minimum-cost vertex cover in a bipartite pair graph via a flow reduction:
// source->left at element cost, right->sink at element cost, pair arcs
// uncuttable. Element costs must be >= 1.
BipartiteCoverResult bipartite_min_cost_vertex_cover(
    int n_left, int n_right, const std::vector<std::pair<int, int>>& pairs,
    const std::vector<std::int64_t>& left_cost, const std::vector<std::int64_t>& right_cost);

}  // namespace mcp::flow
