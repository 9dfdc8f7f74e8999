#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcp/budgets.hpp"
#include "mcp/instance.hpp"

namespace mcp::kernel {

struct RuleOutcome {
  enum class Status { unchanged, reduced, decided };
  Status status = Status::unchanged;
  Instance inst;        // meaningful when status == reduced
  bool answer = false;  // meaningful when status == decided
};

// If s (or t) has a single neighbor w over an edge of capacity <= a, that
// edge is forced into every solution: pay its cost from d and move the
// terminal to w. Underflow of d decides NO; collapsing s onto t decides YES.
RuleOutcome rule_st_deg_one(const Instance& inst);

// Deletes one degree-one non-terminal (its edge is in no inclusion-minimal
// cut).
RuleOutcome rule_delete_deg_one(const Instance& inst);

// Merges the first vertex pair whose min cut has capacity >= a+1; for the
// pair {s,t} this decides YES (no (s,t)-cut of capacity <= a exists).
RuleOutcome rule_merge_big_cut(const Instance& inst);

// Exact minimum vertex cover by degree branching. Deterministic; throws
// BudgetError when the node budget runs out.
std::vector<int> min_vertex_cover(int n, const std::vector<std::pair<int, int>>& edges,
                                  const Budgets& budgets = {});

struct KernelReport {
  int rounds = 0;  // total rule applications; each removes one vertex
  int fired_st_deg_one = 0;
  int fired_delete_deg_one = 0;
  int fired_merge_big_cut = 0;
  std::optional<bool> decided;  // answer fixed during reduction
  std::int64_t kernel_edges = 0;
  std::int64_t kernel_vc = 0;       // exact, of the reduced WMCP kernel
  std::int64_t bound_2vca = 0;      // 2 * vc * a
  bool bound_holds = false;         // kernel_edges <= bound_2vca
  std::optional<std::int64_t> mcp_edges;        // MCP input only: to_mcp image size
  std::optional<std::int64_t> bound_4vca2;      // 4 * vc * a^2
  std::optional<bool> mcp_bound_holds;

  std::string to_json() const;
};

struct KernelResult {
  Instance inst;  // reduced instance; for MCP input the to_mcp image
  KernelReport report;
};

// Applies the three rules to a fixpoint (st-deg-one, delete-deg-one,
// merge-big-cut, cheapest first). WMCP input is kernelized directly; MCP
// input runs the same pipeline on its weighted reading and is then mapped
// back through to_mcp. ZWMCP is rejected.
KernelResult kernelize(const Instance& inst, const Budgets& budgets = {});

}  // namespace mcp::kernel
