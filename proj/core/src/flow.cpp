#include "mcp/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace mcp::flow {

namespace {

using Big = __int128;  // internal accumulator; immune to capacity-sum overflow

constexpr Big kInf = std::numeric_limits<std::int64_t>::max();

// Arc-pair residual network. Arc i and i^1 are reverses of each other.
struct FlowNet {
  struct Arc {
    int to;
    Big cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out;

  explicit FlowNet(int n) : out(n) {}

  int add_arc(int u, int v, Big forward, Big backward) {
    int id = static_cast<int>(arcs.size());
    arcs.push_back({v, forward});
    arcs.push_back({u, backward});
    out[u].push_back(id);
    out[v].push_back(id + 1);
    return id;
  }

  // Edmonds-Karp.
  Big max_flow(int source, int sink) {
    Big total = 0;
    std::vector<int> pred_arc(out.size());
    for (;;) {
      std::fill(pred_arc.begin(), pred_arc.end(), -1);
      std::queue<int> queue;
      queue.push(source);
      pred_arc[source] = -2;
      while (!queue.empty() && pred_arc[sink] == -1) {
        int v = queue.front();
        queue.pop();
        for (int id : out[v]) {
          if (arcs[id].cap > 0 && pred_arc[arcs[id].to] == -1) {
            pred_arc[arcs[id].to] = id;
            queue.push(arcs[id].to);
          }
        }
      }
      if (pred_arc[sink] == -1) break;
      Big push = kInf;
      for (int v = sink; v != source;) {
        int id = pred_arc[v];
        push = std::min(push, arcs[id].cap);
        v = arcs[id ^ 1].to;
      }
      for (int v = sink; v != source;) {
        int id = pred_arc[v];
        arcs[id].cap -= push;
        arcs[id ^ 1].cap += push;
        v = arcs[id ^ 1].to;
      }
      total += push;
    }
    return total;
  }

  std::vector<char> reachable(int source) const {
    std::vector<char> seen(out.size(), 0);
    std::vector<int> stack{source};
    seen[source] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int id : out[v])
        if (arcs[id].cap > 0 && !seen[arcs[id].to]) {
          seen[arcs[id].to] = 1;
          stack.push_back(arcs[id].to);
        }
    }
    return seen;
  }
};

std::int64_t narrow(Big v) {
  if (v > std::numeric_limits<std::int64_t>::max())
    throw ValidationError("flow value overflows 64 bits");
  return static_cast<std::int64_t>(v);
}

MinCutResult undirected_min_cut(const Instance& inst, std::span<const std::int64_t> caps,
                                int x, int y) {
  if (x == y) throw ValidationError("min_cut requires distinct vertices");
  if (x < 0 || x >= inst.n() || y < 0 || y >= inst.n())
    throw ValidationError("min_cut vertex out of range");
  if (static_cast<int>(caps.size()) != inst.m())
    throw ValidationError("capacity vector size mismatch");

  FlowNet net(inst.n());
  for (int i = 0; i < inst.m(); ++i) {
    if (caps[i] < 0) throw ValidationError("negative capacity");
    net.add_arc(inst.edges[i].u, inst.edges[i].v, caps[i], caps[i]);
  }
  Big value = net.max_flow(x, y);

  std::vector<char> side = net.reachable(x);
  MinCutResult result;
  result.value = narrow(value);
  std::vector<int> cut_edges;
  for (int i = 0; i < inst.m(); ++i)
    if (side[inst.edges[i].u] != side[inst.edges[i].v]) cut_edges.push_back(i);
  result.cut.edges = std::move(cut_edges);
  for (int id : result.cut.edges) result.cut.total_capacity += caps[id];
  for (int v = 0; v < inst.n(); ++v)
    if (side[v]) result.x_side.push_back(v);
  return result;
}

}  // namespace

MinCutResult min_cut(const Instance& inst, std::span<const std::int64_t> capacities,
                     int x, int y) {
  return undirected_min_cut(inst, capacities, x, y);
}

std::optional<CutSet> avoiding_min_cut(const Instance& inst, const DefenseSet& defense) {
  // omega'(e) = a+1 on protected edges, clamped elsewhere: the <=a decision
  // and any returned cut are unchanged by clamping to a+1.
  std::vector<std::int64_t> caps(inst.m());
  std::vector<char> in_defense(inst.m(), 0);
  for (int id : defense.edges) {
    if (id < 0 || id >= inst.m()) throw ValidationError("defense edge id out of range");
    in_defense[id] = 1;
  }
  for (int i = 0; i < inst.m(); ++i)
    caps[i] = in_defense[i] ? inst.a + 1 : std::min(inst.edges[i].cap, inst.a + 1);

  MinCutResult mc = undirected_min_cut(inst, caps, inst.s, inst.t);
  if (mc.value > inst.a) return std::nullopt;
  // Capacity <= a rules out protected edges, so the cut is valid under omega.
  return make_cut(inst, mc.cut.edges);
}

std::vector<std::vector<std::int64_t>> all_pairs_min_cut(const Instance& inst) {
  auto caps = inst.capacities();
  std::vector<std::vector<std::int64_t>> table(inst.n(),
                                               std::vector<std::int64_t>(inst.n(), 0));
  for (int u = 0; u < inst.n(); ++u)
    for (int v = u + 1; v < inst.n(); ++v) {
      std::int64_t value = undirected_min_cut(inst, caps, u, v).value;
      table[u][v] = table[v][u] = value;
    }
  return table;
}

BipartiteCoverResult bipartite_min_cost_vertex_cover(
    int n_left, int n_right, const std::vector<std::pair<int, int>>& pairs,
    const std::vector<std::int64_t>& left_cost, const std::vector<std::int64_t>& right_cost) {
  if (static_cast<int>(left_cost.size()) != n_left ||
      static_cast<int>(right_cost.size()) != n_right)
    throw ValidationError("cost vector size mismatch");
  for (std::int64_t c : left_cost)
    if (c < 1) throw ValidationError("element costs must be >= 1");
  for (std::int64_t c : right_cost)
    if (c < 1) throw ValidationError("element costs must be >= 1");

  const int source = n_left + n_right;
  const int sink = source + 1;
  FlowNet net(n_left + n_right + 2);
  std::vector<int> left_arc(n_left), right_arc(n_right);
  for (int i = 0; i < n_left; ++i) left_arc[i] = net.add_arc(source, i, left_cost[i], 0);
  for (int j = 0; j < n_right; ++j)
    right_arc[j] = net.add_arc(n_left + j, sink, right_cost[j], 0);
  for (auto [l, r] : pairs) {
    if (l < 0 || l >= n_left || r < 0 || r >= n_right)
      throw ValidationError("pair endpoint out of range");
    net.add_arc(l, n_left + r, kInf, 0);
  }

  BipartiteCoverResult result;
  result.value = narrow(net.max_flow(source, sink));
  std::vector<char> reach = net.reachable(source);
  // Koenig-style extraction: cut source arcs to unreachable left elements and
  // sink arcs from reachable right elements.
  for (int i = 0; i < n_left; ++i)
    if (!reach[i]) result.left.push_back(i);
  for (int j = 0; j < n_right; ++j)
    if (reach[n_left + j]) result.right.push_back(j);
  return result;
}

}  // namespace mcp::flow
