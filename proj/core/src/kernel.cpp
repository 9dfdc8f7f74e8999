#include "mcp/kernel.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "mcp/flow.hpp"
#include "mcp/transform.hpp"

namespace mcp::kernel {

namespace {

Instance trivial_yes(const Instance& like) {
  Instance out;
  out.variant = like.variant == Variant::ZWMCP ? Variant::ZWMCP : like.variant;
  out.names = {like.names[like.s], like.names[like.t]};
  out.s = 0;
  out.t = 1;
  out.d = 0;
  out.a = 0;
  out.edges = {Edge{0, 1, 1, 1}};  // min cut 1 > a: the empty defense works
  Instance canon = out.canonicalized();
  canon.validate();
  return canon;
}

Instance trivial_no(const Instance& like) {
  Instance out;
  out.variant = like.variant;
  out.names = {like.names[like.s], like.names[like.t]};
  out.s = 0;
  out.t = 1;
  out.d = 0;
  out.a = 0;  // s,t disconnected: the empty cut costs 0 and avoids everything
  Instance canon = out.canonicalized();
  canon.validate();
  return canon;
}

Instance delete_vertex(const Instance& inst, int victim) {
  Instance out;
  out.variant = inst.variant;
  out.d = inst.d;
  out.a = inst.a;
  std::vector<int> remap(inst.n(), -1);
  for (int v = 0; v < inst.n(); ++v) {
    if (v == victim) continue;
    remap[v] = out.n();
    out.names.push_back(inst.names[v]);
  }
  for (const Edge& e : inst.edges)
    if (e.u != victim && e.v != victim)
      out.edges.push_back(Edge{remap[e.u], remap[e.v], e.cost, e.cap});
  out.s = remap[inst.s];
  out.t = remap[inst.t];
  Instance canon = out.canonicalized();
  canon.validate();
  return canon;
}

RuleOutcome st_deg_one_at(const Instance& inst, int terminal) {
  auto adj = inst.adjacency();
  if (adj[terminal].size() != 1) return {};
  auto [w, edge_id] = adj[terminal][0];
  if (inst.edges[edge_id].cap > inst.a) return {};

  std::int64_t new_d = inst.d - inst.edges[edge_id].cost;
  if (new_d < 0) return {RuleOutcome::Status::decided, {}, false};  // forced edge unaffordable
  int other = terminal == inst.s ? inst.t : inst.s;
  if (w == other) return {RuleOutcome::Status::decided, {}, true};  // terminals collapse

  Instance next = inst;
  next.d = new_d;
  if (terminal == next.s)
    next.s = w;
  else
    next.t = w;
  next = delete_vertex(next, terminal);
  return {RuleOutcome::Status::reduced, std::move(next), false};
}

}  // namespace

RuleOutcome rule_st_deg_one(const Instance& inst) {
  RuleOutcome at_s = st_deg_one_at(inst, inst.s);
  if (at_s.status != RuleOutcome::Status::unchanged) return at_s;
  return st_deg_one_at(inst, inst.t);
}

RuleOutcome rule_delete_deg_one(const Instance& inst) {
  auto adj = inst.adjacency();
  for (int v = 0; v < inst.n(); ++v) {
    if (v == inst.s || v == inst.t) continue;
    if (adj[v].size() == 1)
      return {RuleOutcome::Status::reduced, delete_vertex(inst, v), false};
  }
  return {};
}

RuleOutcome rule_merge_big_cut(const Instance& inst) {
  auto table = flow::all_pairs_min_cut(inst);
  if (table[inst.s][inst.t] >= inst.a + 1)
    return {RuleOutcome::Status::decided, {}, true};
  for (int u = 0; u < inst.n(); ++u)
    for (int v = u + 1; v < inst.n(); ++v) {
      if ((u == inst.s && v == inst.t) || (u == inst.t && v == inst.s)) continue;
      if (table[u][v] >= inst.a + 1)
        return {RuleOutcome::Status::reduced, transform::merge(inst, u, v), false};
    }
  return {};
}

std::vector<int> min_vertex_cover(int n, const std::vector<std::pair<int, int>>& edges,
                                  const Budgets& budgets) {
  std::vector<std::set<int>> adj(n);
  for (auto [u, v] : edges) {
    if (u == v || u < 0 || v < 0 || u >= n || v >= n)
      throw ValidationError("bad vertex cover input");
    adj[u].insert(v);
    adj[v].insert(u);
  }

  std::vector<int> best(n);
  for (int i = 0; i < n; ++i) best[i] = i;  // everything: always a cover
  std::vector<int> chosen;
  std::int64_t nodes = 0;

  auto recurse = [&](auto&& self, std::vector<std::set<int>>& g) -> void {
    if (++nodes > budgets.vc_branch_nodes)
      throw BudgetError("vertex cover branching budget exceeded");
    if (chosen.size() >= best.size()) return;

    // Greedy matching lower bound.
    {
      std::vector<char> matched(n, 0);
      size_t matching = 0;
      for (int v = 0; v < n; ++v) {
        if (matched[v]) continue;
        for (int w : g[v])
          if (!matched[w]) {
            matched[v] = matched[w] = 1;
            ++matching;
            break;
          }
      }
      if (chosen.size() + matching >= best.size()) return;
    }

    int pick = -1;
    size_t degree = 0;
    for (int v = 0; v < n; ++v)
      if (g[v].size() > degree) {
        degree = g[v].size();
        pick = v;
      }
    if (pick < 0) {  // no edges left
      best = chosen;
      std::sort(best.begin(), best.end());
      return;
    }

    auto take = [&](int v, std::vector<std::set<int>>& graph) {
      std::vector<std::pair<int, int>> removed;
      for (int w : graph[v]) {
        graph[w].erase(v);
        removed.push_back({v, w});
      }
      graph[v].clear();
      chosen.push_back(v);
      return removed;
    };
    auto undo = [&](const std::vector<std::pair<int, int>>& removed,
                    std::vector<std::set<int>>& graph) {
      chosen.pop_back();
      for (auto [v, w] : removed) {
        graph[v].insert(w);
        graph[w].insert(v);
      }
    };

    // Branch 1: pick in the cover.
    auto removed = take(pick, g);
    self(self, g);
    undo(removed, g);

    // Branch 2: all neighbors in the cover.
    std::vector<int> nbrs(g[pick].begin(), g[pick].end());
    std::vector<std::vector<std::pair<int, int>>> undos;
    for (int w : nbrs) undos.push_back(take(w, g));
    self(self, g);
    for (auto it = undos.rbegin(); it != undos.rend(); ++it) undo(*it, g);
  };
  recurse(recurse, adj);
  return best;
}

std::string KernelReport::to_json() const {
  nlohmann::json j;
  j["rounds"] = rounds;
  j["rules_fired"] = {{"st_deg_one", fired_st_deg_one},
                      {"delete_deg_one", fired_delete_deg_one},
                      {"merge_big_cut", fired_merge_big_cut}};
  j["kernel_edges"] = kernel_edges;
  if (decided) {
    j["decided"] = *decided ? "yes" : "no";
  } else {
    j["kernel_vc"] = kernel_vc;
    j["bound_2vca"] = bound_2vca;
    j["bound_holds"] = bound_holds;
    if (mcp_edges) j["mcp_edges"] = *mcp_edges;
    if (bound_4vca2) j["bound_4vca2"] = *bound_4vca2;
    if (mcp_bound_holds) j["mcp_bound_holds"] = *mcp_bound_holds;
  }
  return j.dump();
}

KernelResult kernelize(const Instance& input, const Budgets& budgets) {
  if (input.variant == Variant::ZWMCP)
    throw ValidationError("kernelize expects MCP or WMCP (capacities >= 1)");
  const bool mcp_input = input.variant == Variant::MCP;

  KernelResult result;
  Normalized norm = normalize(input);
  if (norm.decided_no) {
    result.report.decided = false;
    result.inst = trivial_no(input);
    result.report.kernel_edges = result.inst.m();
    return result;
  }

  Instance cur = norm.inst;
  if (mcp_input) cur.variant = Variant::WMCP;  // merges sum capacities

  for (;;) {
    RuleOutcome out = rule_st_deg_one(cur);
    if (out.status == RuleOutcome::Status::unchanged) {
      out = rule_delete_deg_one(cur);
      if (out.status == RuleOutcome::Status::unchanged) {
        out = rule_merge_big_cut(cur);
        if (out.status == RuleOutcome::Status::unchanged) break;
        if (out.status == RuleOutcome::Status::reduced) ++result.report.fired_merge_big_cut;
      } else {
        ++result.report.fired_delete_deg_one;
      }
    } else {
      if (out.status != RuleOutcome::Status::decided) ++result.report.fired_st_deg_one;
    }
    if (out.status == RuleOutcome::Status::decided) {
      result.report.decided = out.answer;
      result.inst = out.answer ? trivial_yes(input) : trivial_no(input);
      result.report.kernel_edges = result.inst.m();
      return result;
    }
    cur = std::move(out.inst);
    ++result.report.rounds;
  }

  result.report.kernel_edges = cur.m();
  std::vector<std::pair<int, int>> plain;
  for (const Edge& e : cur.edges) plain.push_back({e.u, e.v});
  result.report.kernel_vc =
      static_cast<std::int64_t>(min_vertex_cover(cur.n(), plain, budgets).size());
  result.report.bound_2vca = 2 * result.report.kernel_vc * cur.a;
  result.report.bound_holds = result.report.kernel_edges <= result.report.bound_2vca;

  if (mcp_input) {
    Instance image = transform::to_mcp(cur);
    result.report.mcp_edges = image.m();
    result.report.bound_4vca2 = 4 * result.report.kernel_vc * cur.a * cur.a;
    result.report.mcp_bound_holds = *result.report.mcp_edges <= *result.report.bound_4vca2;
    result.inst = std::move(image);
  } else {
    result.inst = std::move(cur);
  }
  return result;
}

}  // namespace mcp::kernel
