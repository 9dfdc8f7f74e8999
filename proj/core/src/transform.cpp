#include "mcp/transform.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "mcp/flow.hpp"

namespace mcp::transform {

namespace {

// Smallest fresh name of the form "e#<k>" not colliding with used names.
class FreshNames {
 public:
  explicit FreshNames(const Instance& inst)
      : used_(inst.names.begin(), inst.names.end()) {}

  std::string next() {
    for (;;) {
      std::string candidate = "e#" + std::to_string(counter_++);
      if (used_.insert(candidate).second) return candidate;
    }
  }

 private:
  std::unordered_set<std::string> used_;
  long counter_ = 0;
};

// s-t connectivity when the edges in `removed` are deleted.
bool connected_without(const Instance& inst,
                       const std::vector<std::vector<std::pair<int, int>>>& adj,
                       const std::vector<char>& removed) {
  std::vector<char> seen(inst.n(), 0);
  std::vector<int> stack{inst.s};
  seen[inst.s] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (v == inst.t) return true;
    for (auto [w, id] : adj[v])
      if (!removed[id] && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return false;
}

// Enumerates inclusion-minimal (s,t)-cuts of capacity <= bound; the callback
// may stop early by returning false.
template <typename Callback>
void for_each_minimal_cut(const Instance& inst, std::int64_t bound, const Budgets& budgets,
                          Callback&& cb) {
  std::vector<int> free_vertices;
  for (int v = 0; v < inst.n(); ++v)
    if (v != inst.s && v != inst.t) free_vertices.push_back(v);
  const int k = static_cast<int>(free_vertices.size());
  if (k > budgets.enum_free_vertices)
    throw BudgetError("minimal-cut enumeration: too many non-terminal vertices");
  if (k < 63 && (std::int64_t{1} << k) > budgets.enum_subsets)
    throw BudgetError("minimal-cut enumeration: subset budget exceeded");

  auto adj = inst.adjacency();
  std::set<std::vector<int>> emitted;
  std::vector<char> in_side(inst.n(), 0);
  std::vector<char> removed(inst.m(), 0);

  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::fill(in_side.begin(), in_side.end(), 0);
    in_side[inst.s] = 1;
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1) in_side[free_vertices[i]] = 1;

    std::vector<int> cut;
    __int128 cap = 0;
    for (int i = 0; i < inst.m(); ++i)
      if (in_side[inst.edges[i].u] != in_side[inst.edges[i].v]) {
        cut.push_back(i);
        cap += inst.edges[i].cap;
      }
    if (cap > bound) continue;

    std::fill(removed.begin(), removed.end(), 0);
    for (int id : cut) removed[id] = 1;
    bool minimal = true;
    for (int id : cut) {
      removed[id] = 0;  // keep this one edge; the rest must fail to cut
      if (!connected_without(inst, adj, removed)) {
        minimal = false;
        removed[id] = 1;
        break;
      }
      removed[id] = 1;
    }
    if (!minimal) continue;
    if (!emitted.insert(cut).second) continue;
    if (!cb(cut, static_cast<std::int64_t>(cap))) return;
  }
}

}  // namespace

Instance merge(const Instance& inst, int u, int w) {
  if (u == w || u < 0 || w < 0 || u >= inst.n() || w >= inst.n())
    throw ValidationError("merge requires two distinct vertices");
  const bool u_terminal = (u == inst.s || u == inst.t);
  const bool w_terminal = (w == inst.s || w == inst.t);
  if (u_terminal && w_terminal) throw ValidationError("merging s with t is not allowed");

  std::string merged_name;
  if (u_terminal)
    merged_name = inst.names[u];
  else if (w_terminal)
    merged_name = inst.names[w];
  else
    merged_name = std::min(inst.names[u], inst.names[w]);

  Instance out;
  out.variant = inst.variant;
  out.d = inst.d;
  out.a = inst.a;

  std::vector<int> remap(inst.n(), -1);
  int merged_id = -1;
  for (int v = 0; v < inst.n(); ++v) {
    if (v == u || v == w) continue;
    remap[v] = out.n();
    out.names.push_back(inst.names[v]);
  }
  merged_id = out.n();
  out.names.push_back(merged_name);
  remap[u] = remap[w] = merged_id;

  std::map<std::pair<int, int>, Edge> collapsed;
  for (const Edge& e : inst.edges) {
    int x = remap[e.u], y = remap[e.v];
    if (x == y) continue;  // the edge {u,w} vanishes
    if (x > y) std::swap(x, y);
    auto [it, fresh] = collapsed.try_emplace({x, y}, Edge{x, y, e.cost, e.cap});
    if (!fresh) {
      it->second.cost = std::min(it->second.cost, e.cost);
      it->second.cap += e.cap;
    }
  }
  for (auto& [key, e] : collapsed) out.edges.push_back(e);

  auto terminal = [&](int old_id) {
    return (old_id == u || old_id == w) ? merged_id : remap[old_id];
  };
  out.s = terminal(inst.s);
  out.t = terminal(inst.t);

  Instance canon = out.canonicalized();
  canon.validate();
  return canon;
}

Instance replay_trace(const Instance& inst, const MergeTrace& trace) {
  Instance current = inst;
  for (const MergeRecord& rec : trace) {
    int u = current.vertex(rec.a);
    int w = current.vertex(rec.b);
    if (u < 0 || w < 0) throw ValidationError("trace names an unknown vertex");
    current = merge(current, u, w);
    if (current.vertex(rec.merged) < 0)
      throw ValidationError("trace merged-name mismatch");
  }
  return current;
}

namespace {

// Min (s~u, w~t)-cut value in G-e with the pairs identified; parallel edges
// collapse by capacity sum, intra-group edges drop.
std::int64_t glued_min_cut(const Instance& inst, int edge_id, bool u_on_s_side) {
  const Edge& e = inst.edges[edge_id];
  int to_s = u_on_s_side ? e.u : e.v;
  int to_t = u_on_s_side ? e.v : e.u;

  Instance g;
  g.variant = Variant::ZWMCP;  // capacities may be 0; costs are irrelevant here
  g.d = 0;
  g.a = 0;
  std::vector<int> remap(inst.n());
  for (int v = 0; v < inst.n(); ++v) {
    if (v == to_s) {
      remap[v] = -1;  // placeholder, becomes s
    } else if (v == to_t) {
      remap[v] = -2;
    } else {
      remap[v] = 0;
    }
  }
  // Build vertex list: glued-s, glued-t, everything else.
  g.names.push_back("0");
  g.names.push_back("1");
  int next = 2;
  for (int v = 0; v < inst.n(); ++v) {
    if (v == inst.s || v == to_s) {
      remap[v] = 0;
    } else if (v == inst.t || v == to_t) {
      remap[v] = 1;
    } else {
      remap[v] = next++;
      g.names.push_back(std::to_string(remap[v]));
    }
  }
  std::map<std::pair<int, int>, std::int64_t> caps;
  for (int i = 0; i < inst.m(); ++i) {
    if (i == edge_id) continue;
    int x = remap[inst.edges[i].u], y = remap[inst.edges[i].v];
    if (x == y) continue;
    if (x > y) std::swap(x, y);
    caps[{x, y}] += inst.edges[i].cap;
  }
  for (auto& [key, cap] : caps) g.edges.push_back(Edge{key.first, key.second, 1, cap});
  return flow::min_cut(g, g.capacities(), 0, 1).value;
}

}  // namespace

bool minimal_cut_membership(const Instance& inst, int edge_id, const Budgets& budgets) {
  if (edge_id < 0 || edge_id >= inst.m()) throw ValidationError("edge id out of range");
  const Edge& e = inst.edges[edge_id];
  if (e.cap > inst.a) return false;

  // Necessary condition: a minimal cut containing e is a bipartition cut with
  // the endpoints split, so it costs at least cap(e) plus the glued min cut.
  bool maybe = false;
  if (e.u != inst.t && e.v != inst.s)  // u on the s side
    maybe = e.cap + glued_min_cut(inst, edge_id, true) <= inst.a;
  if (!maybe && e.v != inst.t && e.u != inst.s)  // v on the s side
    maybe = e.cap + glued_min_cut(inst, edge_id, false) <= inst.a;
  if (!maybe) return false;

  bool found = false;
  for_each_minimal_cut(inst, inst.a, budgets,
                       [&](const std::vector<int>& cut, std::int64_t) {
                         if (std::binary_search(cut.begin(), cut.end(), edge_id)) {
                           found = true;
                           return false;
                         }
                         return true;
                       });
  return found;
}

Rule1Result rule1_exhaust(const Instance& inst, const Budgets& budgets) {
  Rule1Result result{inst, {}, std::nullopt, 0};
  for (;;) {
    bool merged = false;
    for (int id = 0; id < result.inst.m(); ++id) {
      bool member;
      try {
        member = minimal_cut_membership(result.inst, id, budgets);
      } catch (const BudgetError&) {
        ++result.skipped_edges;  // skipping an application is sound
        continue;
      }
      if (member) continue;
      const Edge& e = result.inst.edges[id];
      const bool u_terminal = (e.u == result.inst.s || e.u == result.inst.t);
      const bool v_terminal = (e.v == result.inst.s || e.v == result.inst.t);
      if (u_terminal && v_terminal) {
        // An {s,t} edge in no cheap minimal cut means no cheap (s,t)-cut at
        // all (every cut contains it), so the empty defense already works.
        result.decided = true;
        return result;
      }
      result.trace.push_back(MergeRecord{result.inst.names[e.u], result.inst.names[e.v], ""});
      result.inst = merge(result.inst, e.u, e.v);
      // Recover the merged name for the trace record.
      MergeRecord& rec = result.trace.back();
      if (result.inst.vertex(rec.a) >= 0)
        rec.merged = rec.a;
      else if (result.inst.vertex(rec.b) >= 0)
        rec.merged = rec.b;
      else
        rec.merged = std::min(rec.a, rec.b);
      merged = true;
      break;
    }
    if (!merged) return result;
  }
}

Instance to_unit_cost(const Instance& inst) {
  if (inst.variant == Variant::MCP) return inst;
  Instance out;
  out.variant = inst.variant;
  out.names = inst.names;
  out.s = inst.s;
  out.t = inst.t;
  out.d = inst.d;
  out.a = inst.a;

  FreshNames fresh(inst);
  for (const Edge& e : inst.edges) {
    if (e.cost <= 1) {
      out.edges.push_back(e);
      continue;
    }
    int prev = e.u;
    for (std::int64_t step = 1; step < e.cost; ++step) {
      int mid = out.n();
      out.names.push_back(fresh.next());
      out.edges.push_back(Edge{prev, mid, 1, e.cap});
      prev = mid;
    }
    out.edges.push_back(Edge{prev, e.v, 1, e.cap});
  }
  Instance canon = out.canonicalized();
  canon.validate();
  return canon;
}

Instance to_unit_capacity(const Instance& inst) {
  if (inst.variant == Variant::ZWMCP)
    throw ValidationError("to_unit_capacity is defined for capacities >= 1 only");
  if (inst.variant == Variant::MCP) return inst;
  Instance out;
  out.variant = inst.variant;
  out.names = inst.names;
  out.s = inst.s;
  out.t = inst.t;
  out.d = inst.d;
  out.a = inst.a;

  FreshNames fresh(inst);
  for (const Edge& e : inst.edges) {
    out.edges.push_back(Edge{e.u, e.v, e.cost, 1});
    for (std::int64_t j = 1; j < e.cap; ++j) {
      int mid = out.n();
      out.names.push_back(fresh.next());
      out.edges.push_back(Edge{e.u, mid, e.cost, 1});
      out.edges.push_back(Edge{mid, e.v, e.cost, 1});
    }
  }
  Instance canon = out.canonicalized();
  canon.validate();
  return canon;
}

Instance to_mcp(const Instance& inst) {
  if (inst.variant == Variant::MCP) return inst;
  if (inst.variant != Variant::WMCP)
    throw ValidationError("to_mcp expects a WMCP instance");
  Instance out = to_unit_cost(to_unit_capacity(inst));
  out.variant = Variant::MCP;
  out.validate();
  return out;
}

Instance subcubify(const Instance& inst) {
  if (inst.variant != Variant::MCP)
    throw ValidationError("subcubify expects an MCP instance");
  auto adj = inst.adjacency();
  for (int v = 0; v < inst.n(); ++v)
    if (adj[v].empty())
      throw ValidationError("subcubify requires every vertex to have a neighbor");

  Instance out;
  out.variant = Variant::WMCP;
  out.d = inst.d;
  out.a = inst.a;

  // Ports per vertex, one per neighbor, in order of neighbor name.
  std::vector<std::vector<int>> port(inst.n());           // u -> port ids in order
  std::vector<std::map<int, int>> port_of(inst.n());      // u -> (neighbor -> port id)
  for (int u = 0; u < inst.n(); ++u) {
    std::vector<int> nbrs;
    for (auto [w, id] : adj[u]) nbrs.push_back(w);
    std::sort(nbrs.begin(), nbrs.end(),
              [&](int x, int y) { return inst.names[x] < inst.names[y]; });
    for (size_t i = 0; i < nbrs.size(); ++i) {
      int p = out.n();
      out.names.push_back(inst.names[u] + "#p" + std::to_string(i + 1));
      port[u].push_back(p);
      port_of[u][nbrs[i]] = p;
    }
    for (size_t i = 0; i + 1 < port[u].size(); ++i)
      out.edges.push_back(Edge{port[u][i], port[u][i + 1], 1, inst.a + 1});
  }
  for (const Edge& e : inst.edges)
    out.edges.push_back(Edge{port_of[e.u].at(e.v), port_of[e.v].at(e.u), 1, 1});
  out.s = port[inst.s][0];
  out.t = port[inst.t][0];

  Instance canon = out.canonicalized();
  canon.validate();
  return canon;
}

std::vector<CutSet> enumerate_minimal_cuts(const Instance& inst, std::int64_t cap_bound,
                                           const Budgets& budgets) {
  std::vector<CutSet> cuts;
  for_each_minimal_cut(inst, cap_bound, budgets,
                       [&](const std::vector<int>& cut, std::int64_t) {
                         cuts.push_back(make_cut(inst, cut));
                         return true;
                       });
  return cuts;
}

}  // namespace mcp::transform
