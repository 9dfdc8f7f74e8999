#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "mcp/errors.hpp"

namespace mcp {

enum class Variant { MCP, WMCP, ZWMCP };

const char* to_string(Variant v);
std::optional<Variant> variant_from_string(const std::string& s);

struct Edge {
  int u = -1;  // endpoint indices with u < v
  int v = -1;
  std::int64_t cost = 1;  // defender price, >= 1
  std::int64_t cap = 1;   // attacker price, >= 0 (>= 1 unless ZWMCP)
};

// One problem instance: graph, terminals, per-edge cost/capacity, budgets.
// Instances are immutable values after construction; transforms copy.
// Vertex ids are opaque strings; the dense integer indexing is canonical
// (names sorted lexicographically, edges sorted by endpoint pair) and never
// leaks into serialized output in any other order.
struct Instance {
  Variant variant = Variant::WMCP;
  std::vector<std::string> names;  // index -> vertex name
  std::vector<Edge> edges;
  int s = -1;
  int t = -1;
  std::int64_t d = 0;  // defender budget
  std::int64_t a = 0;  // attacker budget

  int n() const { return static_cast<int>(names.size()); }
  int m() const { return static_cast<int>(edges.size()); }

  int vertex(const std::string& name) const;        // -1 if absent
  int find_edge(int u, int v) const;                // -1 if absent
  std::vector<std::vector<std::pair<int, int>>> adjacency() const;  // v -> (peer, edge id)
  std::vector<std::int64_t> capacities() const;
  std::int64_t total_cost() const;
  std::int64_t total_capacity() const;
  bool connected_st() const;  // is t reachable from s

  // Sorts names lexicographically and edges canonically, remapping indices.
  Instance canonicalized() const;
  // Structural invariants; throws ValidationError. Assumes canonical form.
  void validate() const;

  bool operator==(const Instance& o) const = default;
};

// Certificate types. Edge ids refer to a specific instance's edge order.
struct DefenseSet {
  std::vector<int> edges;  // sorted ids
  std::int64_t total_cost = 0;
};

struct CutSet {
  std::vector<int> edges;  // sorted ids
  std::int64_t total_capacity = 0;
};

DefenseSet make_defense(const Instance& inst, std::vector<int> edge_ids);
CutSet make_cut(const Instance& inst, std::vector<int> edge_ids);

// Convenience constructor used by transforms, generators and tests: builds,
// canonicalizes and validates in one step.
Instance make_instance(Variant variant, const std::vector<std::string>& vertices,
                       const std::vector<std::tuple<std::string, std::string, std::int64_t, std::int64_t>>& edges,
                       const std::string& s, const std::string& t, std::int64_t d, std::int64_t a);

// JSON external format (see README). Throws ValidationError; never repairs.
Instance parse(const std::string& text);
std::string serialize(const Instance& inst);

// Weight/budget clamping and connectivity cleanup. Total on valid instances.
// If s and t are disconnected the instance is a NO regardless of budgets
// (the empty edge set is an (s,t)-cut of capacity 0 and avoids any defense);
// `decided_no` is set and `inst` holds a minimal equivalent stand-in.
struct Normalized {
  Instance inst;
  bool decided_no = false;
};
Normalized normalize(const Instance& inst);

}  // namespace mcp
