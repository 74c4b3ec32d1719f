#include "trimatch/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace trimatch {

Graph::Graph(VertexId num_vertices, std::uint64_t num_edges,
             std::vector<std::uint64_t> row_offsets,
             std::vector<VertexId> neighbors)
    : num_vertices_(num_vertices),
      num_edges_(num_edges),
      row_offsets_(std::move(row_offsets)),
      neighbors_(std::move(neighbors)) {
  if (row_offsets_.size() != static_cast<std::size_t>(num_vertices_) + 1 ||
      row_offsets_.back() != 2 * num_edges_ ||
      neighbors_.size() != 2 * num_edges_) {
    throw std::invalid_argument("Graph: inconsistent CSR arrays");
  }
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  if (u >= num_vertices_ || v >= num_vertices_) {
    throw std::out_of_range("has_edge: vertex id " +
                            std::to_string(u >= num_vertices_ ? u : v) +
                            " out of range");
  }
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

Graph build_graph(const EdgeList& edges, BuildReport* report) {
  const VertexId nv = edges.num_vertices_declared;
  BuildReport local;

  // Both orientations of every non-loop entry, then per-vertex sort + unique.
  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(nv) + 1, 0);
  for (const auto& [u, v] : edges.edges) {
    if (u >= nv || v >= nv) {
      throw std::invalid_argument("build_graph: vertex id out of declared range");
    }
    if (u == v) {
      ++local.self_loops_removed;
      continue;
    }
    ++offsets[u + 1];
    ++offsets[v + 1];
  }
  for (VertexId u = 0; u < nv; ++u) offsets[u + 1] += offsets[u];

  std::vector<VertexId> adj(offsets[nv]);
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [u, v] : edges.edges) {
    if (u == v) continue;
    adj[cursor[u]++] = v;
    adj[cursor[v]++] = u;
  }

  // Dedup in place, then rebuild compact offsets.
  std::vector<std::uint64_t> new_offsets(static_cast<std::size_t>(nv) + 1, 0);
  std::uint64_t write = 0;
  for (VertexId u = 0; u < nv; ++u) {
    const std::uint64_t begin = offsets[u], end = offsets[u + 1];
    std::sort(adj.begin() + begin, adj.begin() + end);
    std::uint64_t out = write;
    for (std::uint64_t i = begin; i < end; ++i) {
      if (out == write || adj[out - 1] != adj[i]) {
        adj[out++] = adj[i];
      } else {
        ++local.duplicate_entries_removed;
      }
    }
    write = out;
    new_offsets[u + 1] = write;
  }
  adj.resize(write);
  adj.shrink_to_fit();

  // Each duplicate directed entry was inserted twice; report undirected drops.
  local.duplicate_entries_removed /= 2;

  if (report != nullptr) *report = local;
  return Graph(nv, write / 2, std::move(new_offsets), std::move(adj));
}

DegreeArray degrees(const Graph& g) {
  DegreeArray d(g.num_vertices());
  for (VertexId u = 0; u < g.num_vertices(); ++u) d[u] = g.degree(u);
  return d;
}

}  // namespace trimatch
