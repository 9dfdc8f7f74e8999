#include "mcp/solve.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include <json.hpp>

#include "mcp/flow.hpp"
#include "mcp/kernel.hpp"
#include "mcp/transform.hpp"
#include "mcp/twdp.hpp"

namespace mcp::solve {

std::string SolveOutcome::stats_json() const {
  nlohmann::json j(stats);
  return j.dump();
}

bool verify_defense(const Instance& inst, const DefenseSet& defense) {
  DefenseSet checked = make_defense(inst, defense.edges);
  if (checked.total_cost > inst.d) return false;
  return !flow::avoiding_min_cut(inst, checked).has_value();
}

namespace {

std::int64_t floor_div2(std::int64_t x) { return x / 2; }

// Shortest s-t path as edge ids, or empty when unreachable.
std::vector<int> shortest_path_edges(const Instance& inst) {
  auto adj = inst.adjacency();
  std::vector<int> pred_edge(inst.n(), -1), pred_vertex(inst.n(), -1);
  std::vector<char> seen(inst.n(), 0);
  std::queue<int> queue;
  queue.push(inst.s);
  seen[inst.s] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    if (v == inst.t) break;
    for (auto [w, id] : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        pred_edge[w] = id;
        pred_vertex[w] = v;
        queue.push(w);
      }
  }
  if (!seen[inst.t]) return {};
  std::vector<int> edges;
  for (int v = inst.t; v != inst.s; v = pred_vertex[v]) edges.push_back(pred_edge[v]);
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

SolveOutcome brute_force(const Instance& inst, BruteMode mode, const Budgets& budgets) {
  const int limit = mode == BruteMode::defender_only ? budgets.brute_single_max_edges
                                                     : budgets.brute_double_max_edges;
  if (inst.m() > limit) throw BudgetError("brute force edge limit exceeded");

  // double mode: precompute every bipartition cut as an edge bitmask.
  struct Bipartition {
    std::uint64_t edge_mask;
    std::int64_t cap;
  };
  std::vector<Bipartition> bipartitions;
  if (mode == BruteMode::double_check) {
    std::vector<int> free_vertices;
    for (int v = 0; v < inst.n(); ++v)
      if (v != inst.s && v != inst.t) free_vertices.push_back(v);
    const int k = static_cast<int>(free_vertices.size());
    if (k > 24) throw BudgetError("brute force bipartition limit exceeded");
    std::vector<char> side(inst.n());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      std::fill(side.begin(), side.end(), 0);
      side[inst.s] = 1;
      for (int i = 0; i < k; ++i)
        if (mask >> i & 1) side[free_vertices[i]] = 1;
      Bipartition b{0, 0};
      for (int i = 0; i < inst.m(); ++i)
        if (side[inst.edges[i].u] != side[inst.edges[i].v]) {
          b.edge_mask |= std::uint64_t{1} << i;
          b.cap += inst.edges[i].cap;
        }
      bipartitions.push_back(b);
    }
  }

  auto defense_works = [&](std::uint64_t defense_mask) {
    if (mode == BruteMode::double_check) {
      for (const Bipartition& b : bipartitions)
        if (b.cap <= inst.a && (b.edge_mask & defense_mask) == 0) return false;
      return true;
    }
    std::vector<int> ids;
    for (int i = 0; i < inst.m(); ++i)
      if (defense_mask >> i & 1) ids.push_back(i);
    return !flow::avoiding_min_cut(inst, make_defense(inst, ids)).has_value();
  };

  SolveOutcome outcome;
  std::int64_t best_cost = -1;
  std::uint64_t best_mask = 0;
  std::int64_t nodes = 0;
  // Include/exclude recursion in canonical edge order, pruned by cost, so the
  // work scales with the number of affordable subsets rather than 2^m.
  auto recurse = [&](auto&& self, int next_edge, std::uint64_t mask, std::int64_t cost) -> void {
    if (++nodes > budgets.brute_nodes) throw BudgetError("brute force node budget exceeded");
    if (best_cost >= 0 && cost >= best_cost) return;
    if (defense_works(mask)) {
      best_cost = cost;
      best_mask = mask;
      return;  // supersets only cost more
    }
    for (int id = next_edge; id < inst.m(); ++id) {
      std::int64_t c = cost + inst.edges[id].cost;
      if (c > inst.d) continue;
      self(self, id + 1, mask | (std::uint64_t{1} << id), c);
    }
  };
  recurse(recurse, 0, 0, 0);

  outcome.stats["oracle_calls"] = nodes;
  outcome.yes = best_cost >= 0;
  if (outcome.yes) {
    std::vector<int> ids;
    for (int i = 0; i < inst.m(); ++i)
      if (best_mask >> i & 1) ids.push_back(i);
    outcome.defense = make_defense(inst, ids);
  }
  return outcome;
}

namespace {

bool search_tree_rec(const Instance& inst, std::vector<int>& defense, std::int64_t cost,
                     std::vector<char>& in_defense, std::int64_t& nodes) {
  if (cost > inst.d) return false;
  ++nodes;
  std::vector<int> ids;
  for (int i = 0; i < inst.m(); ++i)
    if (in_defense[i]) ids.push_back(i);
  auto cut = flow::avoiding_min_cut(inst, make_defense(inst, ids));
  if (!cut) return true;
  for (int id : cut->edges) {  // canonical edge order
    in_defense[id] = 1;
    defense.push_back(id);
    if (search_tree_rec(inst, defense, cost + inst.edges[id].cost, in_defense, nodes))
      return true;
    defense.pop_back();
    in_defense[id] = 0;
  }
  return false;
}

}  // namespace

SolveOutcome search_tree(const Instance& inst) {
  if (inst.variant == Variant::ZWMCP)
    throw ValidationError("search tree requires capacities >= 1");
  SolveOutcome outcome;
  std::vector<int> defense;
  std::vector<char> in_defense(inst.m(), 0);
  std::int64_t nodes = 0;
  outcome.yes = search_tree_rec(inst, defense, 0, in_defense, nodes);
  outcome.stats["nodes_expanded"] = nodes;
  if (outcome.yes) outcome.defense = make_defense(inst, defense);
  return outcome;
}

SolveOutcome degree2(const Instance& inst) {
  auto adj = inst.adjacency();
  for (int v = 0; v < inst.n(); ++v)
    if (adj[v].size() > 2) throw ValidationError("degree2 requires maximum degree two");
  if (!inst.connected_st()) throw ValidationError("degree2 requires a connected graph");

  // Trace from s along a chosen first edge until t or a dead end.
  auto walk_via = [&](int first_edge) -> std::vector<int> {
    std::vector<int> path{first_edge};
    const Edge& first = inst.edges[first_edge];
    int v = first.u == inst.s ? first.v : first.u;
    int prev_edge = first_edge;
    while (v != inst.t) {
      int next_edge = -1, next_vertex = -1;
      for (auto [w, id] : adj[v])
        if (id != prev_edge) {
          next_edge = id;
          next_vertex = w;
          break;
        }
      if (next_edge < 0) return {};  // dead end
      path.push_back(next_edge);
      prev_edge = next_edge;
      v = next_vertex;
    }
    return path;
  };

  const bool cycle = [&] {
    for (int v = 0; v < inst.n(); ++v)
      if (adj[v].size() != 2) return false;
    return true;
  }();

  SolveOutcome outcome;
  if (!cycle) {
    // Path graph: every single path edge of capacity <= a is itself a cut and
    // must be bought; everything else is already expensive.
    std::vector<int> st_path;
    for (auto [w, id] : adj[inst.s]) {
      st_path = walk_via(id);
      if (!st_path.empty()) break;
    }
    if (st_path.empty()) throw Error("degree2: failed to trace the s-t path");
    std::vector<int> must;
    for (int id : st_path)
      if (inst.edges[id].cap <= inst.a) must.push_back(id);
    DefenseSet defense = make_defense(inst, must);
    outcome.yes = defense.total_cost <= inst.d;
    if (outcome.yes) outcome.defense = std::move(defense);
    return outcome;
  }

  // Cycle: the two arcs between s and t; minimal cheap cuts are the pairs
  // (one edge per arc) with capacity sum <= a, and a defense is a min-cost
  // vertex cover of that pair graph.
  std::vector<int> arc1 = walk_via(adj[inst.s][0].second);
  std::vector<int> arc2 = walk_via(adj[inst.s][1].second);
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < arc1.size(); ++i)
    for (size_t j = 0; j < arc2.size(); ++j)
      if (inst.edges[arc1[i]].cap + inst.edges[arc2[j]].cap <= inst.a)
        pairs.push_back({static_cast<int>(i), static_cast<int>(j)});
  std::vector<std::int64_t> cost1, cost2;
  for (int id : arc1) cost1.push_back(inst.edges[id].cost);
  for (int id : arc2) cost2.push_back(inst.edges[id].cost);
  auto cover = flow::bipartite_min_cost_vertex_cover(
      static_cast<int>(arc1.size()), static_cast<int>(arc2.size()), pairs, cost1, cost2);
  outcome.yes = cover.value <= inst.d;
  if (outcome.yes) {
    std::vector<int> ids;
    for (int i : cover.left) ids.push_back(arc1[i]);
    for (int j : cover.right) ids.push_back(arc2[j]);
    outcome.defense = make_defense(inst, ids);
  }
  return outcome;
}

SolveOutcome vc_fpt(const Instance& inst, const Budgets& budgets) {
  if (inst.variant != Variant::MCP) throw ValidationError("vc_fpt expects an MCP instance");

  std::vector<std::pair<int, int>> plain;
  for (const Edge& e : inst.edges) plain.push_back({e.u, e.v});
  std::vector<int> cover = kernel::min_vertex_cover(inst.n(), plain, budgets);
  const std::int64_t vc = static_cast<std::int64_t>(cover.size());
  if (static_cast<int>(cover.size()) > budgets.vc_fpt_max_vc)
    throw BudgetError("vc_fpt: vertex cover too large");

  SolveOutcome outcome;
  if (inst.d >= 2 * vc) {
    // A shortest s-t path has at most 2*vc edges; protecting a full path
    // blocks every cut outright.
    std::vector<int> path = shortest_path_edges(inst);
    if (path.empty()) {  // disconnected: the empty cut wins
      outcome.yes = false;
      return outcome;
    }
    outcome.yes = true;
    outcome.defense = make_defense(inst, path);
    outcome.stats["shortcut"] = 1;
    return outcome;
  }

  // The class-swap argument covers internal vertices only, so the terminals
  // are forced into the cover before classes are formed.
  std::set<int> cover_set(cover.begin(), cover.end());
  cover_set.insert(inst.s);
  cover_set.insert(inst.t);

  auto adj = inst.adjacency();
  std::map<std::vector<int>, std::vector<int>> classes;  // neighborhood -> members
  for (int v = 0; v < inst.n(); ++v) {
    if (cover_set.count(v)) continue;
    std::vector<int> nbrs;
    for (auto [w, id] : adj[v]) nbrs.push_back(w);
    std::sort(nbrs.begin(), nbrs.end());
    classes[nbrs].push_back(v);
  }

  std::set<int> pool_set;
  for (int i = 0; i < inst.m(); ++i) {
    const Edge& e = inst.edges[i];
    if (cover_set.count(e.u) && cover_set.count(e.v)) pool_set.insert(i);
  }
  for (auto& [signature, members] : classes) {
    std::vector<int> sorted_members = members;
    std::sort(sorted_members.begin(), sorted_members.end(), [&](int x, int y) {
      return inst.names[x] < inst.names[y];  // lexicographically smallest reps
    });
    size_t keep = std::min(sorted_members.size(), signature.size());
    for (size_t i = 0; i < keep; ++i)
      for (auto [w, id] : adj[sorted_members[i]]) pool_set.insert(id);
  }
  std::vector<int> pool(pool_set.begin(), pool_set.end());

  // Enumerate defense subsets of the pool by increasing size.
  std::int64_t budget = budgets.vc_fpt_subsets;
  std::vector<int> chosen;
  auto try_all = [&](auto&& self, size_t start, std::int64_t remaining) -> bool {
    if (--budget < 0) throw BudgetError("vc_fpt subset budget exceeded");
    if (!flow::avoiding_min_cut(inst, make_defense(inst, chosen)).has_value()) return true;
    if (remaining == 0) return false;
    for (size_t i = start; i < pool.size(); ++i) {
      chosen.push_back(pool[i]);
      if (self(self, i + 1, remaining - 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  outcome.yes = try_all(try_all, 0, std::min<std::int64_t>(inst.d, static_cast<std::int64_t>(pool.size())));
  outcome.stats["oracle_calls"] = budgets.vc_fpt_subsets - budget;
  if (outcome.yes) outcome.defense = make_defense(inst, chosen);
  return outcome;
}

SolveOutcome mcp_degree_wrapper(const Instance& inst) {
  if (inst.variant != Variant::MCP)
    throw ValidationError("mcp_degree_wrapper expects an MCP instance");

  SolveOutcome outcome;
  std::vector<int> path = shortest_path_edges(inst);
  if (!path.empty() && static_cast<std::int64_t>(path.size()) <= inst.d) {
    outcome.yes = true;
    outcome.defense = make_defense(inst, path);
    outcome.stats["route"] = 1;
    return outcome;
  }
  auto adj = inst.adjacency();
  std::int64_t maxdeg = 0;
  for (int v = 0; v < inst.n(); ++v)
    maxdeg = std::max<std::int64_t>(maxdeg, static_cast<std::int64_t>(adj[v].size()));
  if (inst.a >= (floor_div2(inst.d) + 1) * maxdeg) {
    // No short protected path exists, so some component side stays small and
    // its incident edges form a cheap avoiding cut for any defense.
    outcome.yes = false;
    outcome.stats["route"] = 2;
    return outcome;
  }
  outcome = search_tree(inst);
  outcome.stats["route"] = 3;
  return outcome;
}

SolveOutcome auto_solve(const Instance& input, const Budgets& budgets, bool certify) {
  Normalized norm = normalize(input);
  if (norm.decided_no) {
    SolveOutcome outcome;
    outcome.yes = false;
    outcome.stats["route_normalize"] = 1;
    return outcome;
  }
  const Instance& inst = norm.inst;

  auto adj = inst.adjacency();
  size_t maxdeg = 0;
  for (int v = 0; v < inst.n(); ++v) maxdeg = std::max(maxdeg, adj[v].size());
  if (maxdeg <= 2) {
    SolveOutcome outcome = degree2(inst);
    outcome.stats["route_degree2"] = 1;
    return outcome;
  }

  if (inst.variant == Variant::MCP) {
    try {
      std::vector<std::pair<int, int>> plain;
      for (const Edge& e : inst.edges) plain.push_back({e.u, e.v});
      if (static_cast<int>(kernel::min_vertex_cover(inst.n(), plain, budgets).size()) <=
          budgets.auto_vc_cap) {
        SolveOutcome outcome = vc_fpt(inst, budgets);
        outcome.stats["route_vc"] = 1;
        return outcome;
      }
    } catch (const BudgetError&) {
    }
  }

  Instance reduced = inst;
  bool reduced_is_input = true;
  if (!certify) {  // Rule 1 merges cannot lift certificates back
    try {
      transform::Rule1Result r1 = transform::rule1_exhaust(inst, budgets);
      if (r1.decided) {
        SolveOutcome outcome;
        outcome.yes = *r1.decided;
        outcome.stats["route_rule1"] = 1;
        return outcome;
      }
      reduced_is_input = r1.trace.empty();
      reduced = std::move(r1.inst);
    } catch (const BudgetError&) {
    }
  }

  try {
    twdp::NiceDecomposition td = twdp::build_decomposition(reduced);
    if (td.max_bag_size() <= budgets.auto_bag_cap) {
      SolveOutcome outcome = twdp::dp_solve(reduced, budgets);
      outcome.stats["route_dp"] = 1;
      if (!reduced_is_input) outcome.defense.reset();  // ids refer to the merged graph
      return outcome;
    }
  } catch (const BudgetError&) {
  }

  if (inst.variant != Variant::ZWMCP) {
    SolveOutcome outcome = search_tree(inst);
    outcome.stats["route_search"] = 1;
    return outcome;
  }
  SolveOutcome outcome = brute_force(inst, BruteMode::defender_only, budgets);
  outcome.stats["route_brute"] = 1;
  return outcome;
}

}  // namespace mcp::solve
