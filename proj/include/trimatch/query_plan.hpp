#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trimatch/graph.hpp"

namespace trimatch {

inline constexpr int kMaxQueryNodes = 8;

// Connected simple undirected query graph, at most kMaxQueryNodes nodes.
// Small enough for bitmask adjacency rows.
class QueryGraph {
 public:
  static QueryGraph triangle();
  static QueryGraph from_edges(int num_nodes,
                               std::span<const std::pair<int, int>> edges);
  // Inline edge-list string, e.g. "0-1,0-2,1-2". Node count = max id + 1.
  static QueryGraph parse(const std::string& text);

  int num_nodes() const { return n_; }
  int num_edges() const;
  bool has_edge(int a, int b) const { return (adj_[a] >> b) & 1u; }
  int degree(int a) const;
  int min_degree() const;
  bool connected() const;
  std::vector<int> neighbors(int a) const;
  std::uint8_t neighbor_mask(int a) const { return adj_[a]; }

 private:
  int n_ = 0;
  std::array<std::uint8_t, kMaxQueryNodes> adj_{};
};

enum class NecFlavor { SharedNeighborhood, MutuallyAdjacentClique };

// Query nodes that are interchangeable in any embedding: either they share
// the same neighbors and are non-adjacent, or they are pairwise adjacent with
// identical neighborhoods outside the class.
struct NECClass {
  std::vector<int> members;  // ascending node ids
  NecFlavor flavor = NecFlavor::SharedNeighborhood;
};

// Data vertex matched to `smaller` must have a smaller id than the one
// matched to `larger`. Constraints only relate nodes of one NEC class.
struct UmoConstraint {
  int smaller = 0;
  int larger = 0;

  friend bool operator==(const UmoConstraint&, const UmoConstraint&) = default;
};

// BFS spanning tree of the query plus the leftover (non-tree) edges.
struct SpanningTree {
  std::vector<int> visit_order;  // BFS order from the root
  // Per visit position: parent node id, -1 for the root.
  std::vector<int> tree_parent;
  // Per visit position: earlier-visited node ids the new node must also
  // connect to (its non-tree edges).
  std::vector<std::vector<int>> nontree_edges;
};

// Everything precomputed from the query graph before matching starts.
// Indexing is by visit position ("level"): at level L the matcher binds a
// data vertex to query node visit_order[L].
struct QueryPlan {
  QueryGraph query;
  std::vector<int> visit_order;
  std::vector<int> tree_parent;                 // node ids, -1 at level 0
  std::vector<std::vector<int>> nontree_edges;  // node ids per level
  std::vector<UmoConstraint> umo_constraints;
  std::vector<NECClass> nec_classes;
  int min_query_degree = 0;

  // Derived, per level, everything the inner verification loop consults:
  std::vector<int> tree_parent_pos;              // -1 at level 0
  std::vector<std::vector<int>> nontree_pos;     // positions of non-tree endpoints
  std::vector<std::vector<int>> umo_smaller_pos; // positions p: row[p] < new vertex
  std::vector<int> remaining_edges;   // query edges from visit_order[L] to later nodes
  std::vector<std::uint8_t> next_is_adjacent;  // visit_order[L+1] adjacent to visit_order[L]
  std::vector<std::uint8_t> next_umo_bound;    // UMO orders visit_order[L] < visit_order[L+1]

  int width() const { return static_cast<int>(visit_order.size()); }
};

// BFS from root with children in ascending node id. Tree edges plus the
// returned non-tree edges cover E(Q) exactly once. Throws on a disconnected
// query.
SpanningTree build_spanning_tree(const QueryGraph& q, int root);

// Partition of the query nodes into neighborhood equivalence classes;
// singleton classes allowed.
std::vector<NECClass> compute_nec(const QueryGraph& q);

// Chains each class's members by visit position: consecutive pairs only, no
// cross-class constraints.
std::vector<UmoConstraint> generate_umo(const std::vector<NECClass>& classes,
                                        const std::vector<int>& visit_order);

// Root = max-degree node, smallest id on ties; composes the three steps
// above and fills in the per-level derived tables.
QueryPlan compile_plan(const QueryGraph& q);

}  // namespace trimatch
