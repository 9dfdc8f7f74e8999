#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcp/budgets.hpp"
#include "mcp/instance.hpp"

namespace mcp::transform {

// One vertex identification. Replaying a trace on the original instance
// reproduces the transformed instance (see replay_trace).
struct MergeRecord {
  std::string a;
  std::string b;
  std::string merged;
};
using MergeTrace = std::vector<MergeRecord>;

// Identify u and w: the merged vertex is adjacent to N({u,w}); parallel
// edges collapse to min cost / summed capacity; an edge {u,w} vanishes.
// The merged vertex keeps a terminal's name when one endpoint is s or t,
// otherwise the lexicographically smaller name. Merging s with t throws.
Instance merge(const Instance& inst, int u, int w);

Instance replay_trace(const Instance& inst, const MergeTrace& trace);

// Is `edge_id` contained in some inclusion-minimal (s,t)-cut of capacity
// <= a? Exact but exponential: a cheap necessary-condition filter (capacity
// of the edge plus the glued {s,u}/{w,t} min cut must be <= a in some
// orientation) followed by minimal-cut enumeration with early exit.
// Throws BudgetError when enumeration would exceed the budget.
bool minimal_cut_membership(const Instance& inst, int edge_id, const Budgets& budgets = {});

struct Rule1Result {
  Instance inst;
  MergeTrace trace;
  std::optional<bool> decided;  // set to YES when a merge would identify s and t
  int skipped_edges = 0;        // membership tests dropped for budget reasons (sound)
};

// Exhaustively merges endpoints of edges that sit in no inclusion-minimal
// (s,t)-cut of capacity <= a. Answer-preserving; at most n-2 merges.
Rule1Result rule1_exhaust(const Instance& inst, const Budgets& budgets = {});

// Each edge of cost c>1 becomes a path of c unit-cost edges of the same
// capacity. Budgets unchanged. Note: odd-length replacement does not
// preserve bipartiteness.
Instance to_unit_cost(const Instance& inst);

// Each edge of capacity w>1 drops to capacity 1 and gains w-1 two-edge
// detours of the original cost and capacity 1. WMCP only.
Instance to_unit_capacity(const Instance& inst);

// Weighted -> unweighted: to_unit_capacity then to_unit_cost, result MCP.
// Intended for normalized input (costs <= d+1, capacities <= a+1).
Instance to_mcp(const Instance& inst);

// Every vertex becomes a path of one port per neighbor (path edges cost 1,
// capacity a+1); each original edge joins the matching ports at cost and
// capacity 1. Output is subcubic WMCP. MCP input, no isolated vertices.
Instance subcubify(const Instance& inst);

// Exactly the inclusion-minimal (s,t)-cuts of capacity <= cap_bound, each
// once, in a deterministic order. Exponential; guarded by budgets.
std::vector<CutSet> enumerate_minimal_cuts(const Instance& inst, std::int64_t cap_bound,
                                           const Budgets& budgets = {});

}  // namespace mcp::transform
