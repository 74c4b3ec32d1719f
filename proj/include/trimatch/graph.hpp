#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace trimatch {

using VertexId = std::uint32_t;

inline constexpr VertexId kInvalidVertex = static_cast<VertexId>(-1);

// Raw edge list as parsed from the input, before normalization. May contain
// self-loops, duplicate entries, and both orientations of the same edge.
struct EdgeList {
  VertexId num_vertices_declared = 0;
  std::vector<std::pair<VertexId, VertexId>> edges;
};

// What build_graph dropped while normalizing.
struct BuildReport {
  std::uint64_t self_loops_removed = 0;
  std::uint64_t duplicate_entries_removed = 0;
};

// Immutable undirected simple graph in CSR form.
//
// Invariants:
//   - row_offsets is nondecreasing, row_offsets[num_vertices] == 2 * num_edges
//   - each adjacency sublist is strictly ascending (no self-loops, no dups)
//   - adjacency is symmetric: v in N(u) iff u in N(v)
//
// Safe for unsynchronized concurrent reads once built.
class Graph {
 public:
  Graph() = default;
  Graph(VertexId num_vertices, std::uint64_t num_edges,
        std::vector<std::uint64_t> row_offsets, std::vector<VertexId> neighbors);

  VertexId num_vertices() const { return num_vertices_; }
  // Undirected edges, each counted once.
  std::uint64_t num_edges() const { return num_edges_; }

  std::uint32_t degree(VertexId u) const {
    return static_cast<std::uint32_t>(row_offsets_[u + 1] - row_offsets_[u]);
  }

  std::span<const VertexId> neighbors(VertexId u) const {
    return {neighbors_.data() + row_offsets_[u],
            neighbors_.data() + row_offsets_[u + 1]};
  }

  // Binary search in u's sorted sublist. Throws std::out_of_range on an
  // invalid vertex id.
  bool has_edge(VertexId u, VertexId v) const;

  const std::vector<std::uint64_t>& row_offsets() const { return row_offsets_; }
  const std::vector<VertexId>& neighbor_array() const { return neighbors_; }

 private:
  VertexId num_vertices_ = 0;
  std::uint64_t num_edges_ = 0;
  std::vector<std::uint64_t> row_offsets_{0};
  std::vector<VertexId> neighbors_;
};

using DegreeArray = std::vector<std::uint32_t>;

// Symmetrizes, strips self-loops, dedups, and sorts each sublist ascending.
// Isolated declared vertices keep empty sublists. Accepts inputs that list
// either one or both orientations of an edge; the result is the same.
Graph build_graph(const EdgeList& edges, BuildReport* report = nullptr);

DegreeArray degrees(const Graph& g);

}  // namespace trimatch
