#include "mcp/instance.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include <json.hpp>

namespace mcp {

using json = nlohmann::json;

const char* to_string(Variant v) {
  switch (v) {
    case Variant::MCP: return "MCP";
    case Variant::WMCP: return "WMCP";
    case Variant::ZWMCP: return "ZWMCP";
  }
  return "?";
}

std::optional<Variant> variant_from_string(const std::string& s) {
  if (s == "MCP") return Variant::MCP;
  if (s == "WMCP") return Variant::WMCP;
  if (s == "ZWMCP") return Variant::ZWMCP;
  return std::nullopt;
}

int Instance::vertex(const std::string& name) const {
  for (int i = 0; i < n(); ++i)
    if (names[i] == name) return i;
  return -1;
}

int Instance::find_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  for (int i = 0; i < m(); ++i)
    if (edges[i].u == u && edges[i].v == v) return i;
  return -1;
}

std::vector<std::vector<std::pair<int, int>>> Instance::adjacency() const {
  std::vector<std::vector<std::pair<int, int>>> adj(names.size());
  for (int i = 0; i < m(); ++i) {
    adj[edges[i].u].push_back({edges[i].v, i});
    adj[edges[i].v].push_back({edges[i].u, i});
  }
  return adj;
}

std::vector<std::int64_t> Instance::capacities() const {
  std::vector<std::int64_t> caps(edges.size());
  for (int i = 0; i < m(); ++i) caps[i] = edges[i].cap;
  return caps;
}

namespace {

std::int64_t checked_sum(const std::vector<Edge>& edges, bool cost) {
  __int128 total = 0;
  for (const Edge& e : edges) total += cost ? e.cost : e.cap;
  if (total > std::numeric_limits<std::int64_t>::max())
    throw ValidationError(std::string("total edge ") + (cost ? "cost" : "capacity") +
                          " overflows 64 bits");
  return static_cast<std::int64_t>(total);
}

}  // namespace

std::int64_t Instance::total_cost() const { return checked_sum(edges, true); }
std::int64_t Instance::total_capacity() const { return checked_sum(edges, false); }

bool Instance::connected_st() const {
  if (s < 0 || t < 0) return false;
  auto adj = adjacency();
  std::vector<char> seen(names.size(), 0);
  std::vector<int> stack{s};
  seen[s] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (v == t) return true;
    for (auto [w, e] : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return false;
}

Instance Instance::canonicalized() const {
  Instance out;
  out.variant = variant;
  out.d = d;
  out.a = a;

  std::vector<int> order(names.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return names[x] < names[y]; });
  std::vector<int> rank(names.size());
  out.names.reserve(names.size());
  for (size_t i = 0; i < order.size(); ++i) {
    rank[order[i]] = static_cast<int>(i);
    out.names.push_back(names[order[i]]);
  }
  out.s = s >= 0 ? rank[s] : -1;
  out.t = t >= 0 ? rank[t] : -1;

  out.edges.reserve(edges.size());
  for (Edge e : edges) {
    e.u = rank[e.u];
    e.v = rank[e.v];
    if (e.u > e.v) std::swap(e.u, e.v);
    out.edges.push_back(e);
  }
  std::sort(out.edges.begin(), out.edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });
  return out;
}

void Instance::validate() const {
  if (n() < 2) throw ValidationError("instance needs at least the two terminals");
  for (size_t i = 0; i + 1 < names.size(); ++i) {
    if (names[i] == names[i + 1]) throw ValidationError("duplicate vertex name: " + names[i]);
    if (names[i] > names[i + 1]) throw ValidationError("vertex names not canonical");
  }
  for (const std::string& name : names)
    if (name.empty()) throw ValidationError("empty vertex name");
  if (s < 0 || s >= n()) throw ValidationError("s is not a declared vertex");
  if (t < 0 || t >= n()) throw ValidationError("t is not a declared vertex");
  if (s == t) throw ValidationError("s and t must differ");
  if (d < 0) throw ValidationError("negative defender budget");
  if (a < 0) throw ValidationError("negative attacker budget");
  const std::int64_t bound = std::int64_t{1} << 62;
  if (d >= bound || a >= bound) throw ValidationError("budget too large");

  for (size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u < 0 || e.u >= n() || e.v < 0 || e.v >= n())
      throw ValidationError("edge endpoint is not a declared vertex");
    if (e.u == e.v) throw ValidationError("self-loop at " + names[e.u]);
    if (e.u > e.v) throw ValidationError("edge endpoints not canonical");
    if (i > 0 && edges[i - 1].u == e.u && edges[i - 1].v == e.v)
      throw ValidationError("parallel edge {" + names[e.u] + "," + names[e.v] + "}");
    if (e.cost < 1) throw ValidationError("edge cost must be >= 1");
    if (e.cap < 0) throw ValidationError("edge capacity must be >= 0");
    if (e.cost >= bound || e.cap >= bound) throw ValidationError("edge weight too large");
    switch (variant) {
      case Variant::MCP:
        if (e.cost != 1 || e.cap != 1)
          throw ValidationError("MCP requires unit costs and capacities");
        break;
      case Variant::WMCP:
        if (e.cap < 1) throw ValidationError("WMCP requires capacities >= 1");
        break;
      case Variant::ZWMCP:
        break;
    }
  }
  total_cost();      // overflow checks
  total_capacity();
}

DefenseSet make_defense(const Instance& inst, std::vector<int> edge_ids) {
  std::sort(edge_ids.begin(), edge_ids.end());
  edge_ids.erase(std::unique(edge_ids.begin(), edge_ids.end()), edge_ids.end());
  DefenseSet out;
  for (int id : edge_ids) {
    if (id < 0 || id >= inst.m()) throw ValidationError("defense edge id out of range");
    out.total_cost += inst.edges[id].cost;
  }
  out.edges = std::move(edge_ids);
  return out;
}

CutSet make_cut(const Instance& inst, std::vector<int> edge_ids) {
  std::sort(edge_ids.begin(), edge_ids.end());
  edge_ids.erase(std::unique(edge_ids.begin(), edge_ids.end()), edge_ids.end());
  CutSet out;
  for (int id : edge_ids) {
    if (id < 0 || id >= inst.m()) throw ValidationError("cut edge id out of range");
    out.total_capacity += inst.edges[id].cap;
  }
  out.edges = std::move(edge_ids);
  return out;
}

Instance make_instance(Variant variant, const std::vector<std::string>& vertices,
                       const std::vector<std::tuple<std::string, std::string, std::int64_t, std::int64_t>>& edges,
                       const std::string& s, const std::string& t, std::int64_t d, std::int64_t a) {
  Instance inst;
  inst.variant = variant;
  inst.names = vertices;
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < inst.n(); ++i) {
    if (!index.emplace(inst.names[i], i).second)
      throw ValidationError("duplicate vertex name: " + inst.names[i]);
  }
  auto lookup = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw ValidationError("unknown vertex: " + name);
    return it->second;
  };
  for (const auto& [u, v, cost, cap] : edges)
    inst.edges.push_back(Edge{lookup(u), lookup(v), cost, cap});
  inst.s = lookup(s);
  inst.t = lookup(t);
  inst.d = d;
  inst.a = a;
  Instance canon = inst.canonicalized();
  canon.validate();
  return canon;
}

Instance parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("instance must be a JSON object");
  for (const char* key : {"variant", "vertices", "edges", "s", "t", "d", "a"})
    if (!j.contains(key)) throw ValidationError(std::string("missing key: ") + key);

  auto var = variant_from_string(j["variant"].get<std::string>());
  if (!var) throw ValidationError("unknown variant: " + j["variant"].dump());

  Instance inst;
  inst.variant = *var;
  if (!j["vertices"].is_array()) throw ValidationError("vertices must be an array");
  std::unordered_map<std::string, int> index;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw ValidationError("vertex names must be strings");
    std::string name = v.get<std::string>();
    if (!index.emplace(name, inst.n()).second)
      throw ValidationError("duplicate vertex name: " + name);
    inst.names.push_back(name);
  }
  auto lookup = [&](const json& v, const char* what) {
    if (!v.is_string()) throw ValidationError(std::string(what) + " must be a vertex name");
    auto it = index.find(v.get<std::string>());
    if (it == index.end())
      throw ValidationError(std::string("unknown ") + what + ": " + v.get<std::string>());
    return it->second;
  };
  if (!j["edges"].is_array()) throw ValidationError("edges must be an array");
  auto weight = [](const json& e, const char* key) -> std::int64_t {
    if (!e.contains(key)) return 1;  // optional, defaults to 1
    if (!e[key].is_number_integer()) throw ValidationError(std::string(key) + " must be an integer");
    return e[key].get<std::int64_t>();
  };
  for (const auto& e : j["edges"]) {
    if (!e.is_object() || !e.contains("u") || !e.contains("v"))
      throw ValidationError("each edge needs endpoints u and v");
    Edge edge;
    edge.u = lookup(e["u"], "edge endpoint");
    edge.v = lookup(e["v"], "edge endpoint");
    edge.cost = weight(e, "cost");
    edge.cap = weight(e, "cap");
    inst.edges.push_back(edge);
  }
  inst.s = lookup(j["s"], "s");
  inst.t = lookup(j["t"], "t");
  if (!j["d"].is_number_integer() || !j["a"].is_number_integer())
    throw ValidationError("budgets d and a must be integers");
  inst.d = j["d"].get<std::int64_t>();
  inst.a = j["a"].get<std::int64_t>();

  Instance canon = inst.canonicalized();
  canon.validate();
  return canon;
}

std::string serialize(const Instance& inst) {
  Instance canon = inst.canonicalized();
  json j;
  j["variant"] = to_string(canon.variant);
  j["vertices"] = canon.names;
  json edges = json::array();
  for (const Edge& e : canon.edges) {
    json je;
    je["u"] = canon.names[e.u];
    je["v"] = canon.names[e.v];
    je["cost"] = e.cost;
    je["cap"] = e.cap;
    edges.push_back(je);
  }
  j["edges"] = edges;
  j["s"] = canon.names[canon.s];
  j["t"] = canon.names[canon.t];
  j["d"] = canon.d;
  j["a"] = canon.a;
  return j.dump();
}

Normalized normalize(const Instance& input) {
  input.validate();
  Instance inst = input;

  // Connectivity: keep the component holding s; if t is elsewhere the
  // instance is a hard NO (the empty cut already disconnects s from t).
  {
    auto adj = inst.adjacency();
    std::vector<char> seen(inst.n(), 0);
    std::vector<int> stack{inst.s};
    seen[inst.s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [w, e] : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    if (!seen[inst.t]) {
      Instance no;
      no.variant = input.variant;
      no.names = {input.names[input.s], input.names[input.t]};
      no.s = 0;
      no.t = 1;
      no.d = 0;
      no.a = 0;
      no = no.canonicalized();
      return Normalized{no, true};
    }
    if (std::count(seen.begin(), seen.end(), 1) < inst.n()) {
      Instance kept;
      kept.variant = inst.variant;
      kept.d = inst.d;
      kept.a = inst.a;
      std::vector<int> remap(inst.n(), -1);
      for (int v = 0; v < inst.n(); ++v)
        if (seen[v]) {
          remap[v] = kept.n();
          kept.names.push_back(inst.names[v]);
        }
      for (const Edge& e : inst.edges)
        if (seen[e.u] && seen[e.v])
          kept.edges.push_back(Edge{remap[e.u], remap[e.v], e.cost, e.cap});
      kept.s = remap[inst.s];
      kept.t = remap[inst.t];
      inst = kept;
    }
  }

  for (Edge& e : inst.edges) {
    e.cost = std::min(e.cost, inst.d + 1);
    e.cap = std::min(e.cap, inst.a + 1);
  }
  inst.d = std::min(inst.d, inst.total_cost());
  inst.a = std::min(inst.a, inst.total_capacity());

  Instance canon = inst.canonicalized();
  canon.validate();
  return Normalized{canon, false};
}

}  // namespace mcp
