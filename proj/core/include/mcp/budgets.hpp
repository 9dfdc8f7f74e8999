#pragma once

#include <cstdint>

namespace mcp {

// Work caps for the exponential-in-the-worst-case pieces. Defaults target
// desk-scale instances; every field can be overridden per call (the CLI maps
// them to flags and environment variables).
struct Budgets {
  // enumerate_minimal_cuts: max number of vertex bipartitions examined and
  // max number of non-terminal vertices.
  std::int64_t enum_subsets = std::int64_t{1} << 22;
  int enum_free_vertices = 24;

  // min_vertex_cover branching nodes.
  std::int64_t vc_branch_nodes = std::int64_t{1} << 22;

  // brute_force edge limits per mode plus a recursion-node cap.
  int brute_single_max_edges = 16;
  int brute_double_max_edges = 12;
  std::int64_t brute_nodes = std::int64_t{1} << 24;

  // vc_fpt: cover-size cap and defense-subset enumeration cap.
  int vc_fpt_max_vc = 10;
  std::int64_t vc_fpt_subsets = std::int64_t{1} << 22;

  // twdp: bag-size cap, join enumeration caps, total memo entries.
  int dp_max_bag = 9;
  int join_bell_cap = 5;  // joins attempted only when Bell(|bag|) <= this
  std::int64_t join_enum_states = std::int64_t{1} << 22;
  std::int64_t dp_table_entries = std::int64_t{1} << 22;
  bool join_prune = true;  // restrict f_y to the useful range (sound)

  // auto dispatch thresholds.
  int auto_vc_cap = 6;
  int auto_bag_cap = 7;
};

}  // namespace mcp
