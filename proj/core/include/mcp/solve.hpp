#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "mcp/budgets.hpp"
#include "mcp/instance.hpp"

namespace mcp::solve {

struct SolveOutcome {
  bool yes = false;
  std::optional<DefenseSet> defense;  // present on YES when certifying
  std::map<std::string, std::int64_t> stats;

  std::string stats_json() const;
};

// c(D) <= d and no (s,t)-cut of capacity <= a avoids D.
bool verify_defense(const Instance& inst, const DefenseSet& defense);

enum class BruteMode {
  defender_only,  // enumerate defenses, attacker side via the flow oracle
  double_check,   // attacker side by bipartition enumeration (validates flow)
};

// Ground truth by enumeration; returns a minimum-cost defense on YES.
// Edge limits and a node budget guard the recursion.
SolveOutcome brute_force(const Instance& inst, BruteMode mode, const Budgets& budgets = {});

// Branch on the edges of a returned cheap cut; depth <= d, arity <= a.
// MCP/WMCP only (zero capacities would break the arity bound).
// stats: nodes_expanded counts oracle evaluations.
SolveOutcome search_tree(const Instance& inst);

// Polynomial algorithm for connected graphs of maximum degree two (the graph
// is a path or a cycle); accepts every variant including ZWMCP.
SolveOutcome degree2(const Instance& inst);

// MCP parameterized by the vertex cover number: d >= 2*vc shortcut, else
// enumeration over cover-internal edges plus per-neighborhood-class
// representatives.
SolveOutcome vc_fpt(const Instance& inst, const Budgets& budgets = {});

// MCP: short s-t path => YES; a >= (floor(d/2)+1)*maxdeg => NO; otherwise
// delegate to search_tree.
SolveOutcome mcp_degree_wrapper(const Instance& inst);

// Dispatcher: normalize, then route by structure (degree2, vc_fpt, Rule 1 +
// tree-decomposition DP, search tree, brute force). When `certify` is set,
// routes that cannot lift a defense back to the input (Rule 1 merges) are
// skipped so any YES carries a usable certificate.
SolveOutcome auto_solve(const Instance& inst, const Budgets& budgets = {},
                        bool certify = false);

}  // namespace mcp::solve
