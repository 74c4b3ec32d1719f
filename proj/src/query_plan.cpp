#include "trimatch/query_plan.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <stdexcept>

namespace trimatch {

QueryGraph QueryGraph::triangle() {
  const std::pair<int, int> edges[] = {{0, 1}, {0, 2}, {1, 2}};
  return from_edges(3, edges);
}

QueryGraph QueryGraph::from_edges(int num_nodes,
                                  std::span<const std::pair<int, int>> edges) {
  if (num_nodes < 1 || num_nodes > kMaxQueryNodes) {
    throw std::invalid_argument("query graph must have 1.." +
                                std::to_string(kMaxQueryNodes) + " nodes");
  }
  QueryGraph q;
  q.n_ = num_nodes;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= num_nodes || b >= num_nodes) {
      throw std::invalid_argument("query edge endpoint out of range");
    }
    if (a == b) throw std::invalid_argument("query graph must be simple");
    q.adj_[a] |= static_cast<std::uint8_t>(1u << b);
    q.adj_[b] |= static_cast<std::uint8_t>(1u << a);
  }
  return q;
}

QueryGraph QueryGraph::parse(const std::string& text) {
  std::vector<std::pair<int, int>> edges;
  int max_id = -1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view tok(text.data() + pos, end - pos);
    std::size_t dash = tok.find('-');
    if (dash == std::string_view::npos) {
      throw std::invalid_argument("query edge '" + std::string(tok) +
                                  "' must look like 'a-b'");
    }
    int a = 0, b = 0;
    auto ra = std::from_chars(tok.data(), tok.data() + dash, a);
    auto rb = std::from_chars(tok.data() + dash + 1, tok.data() + tok.size(), b);
    if (ra.ec != std::errc{} || ra.ptr != tok.data() + dash ||
        rb.ec != std::errc{} || rb.ptr != tok.data() + tok.size()) {
      throw std::invalid_argument("query edge '" + std::string(tok) +
                                  "' must look like 'a-b'");
    }
    edges.emplace_back(a, b);
    max_id = std::max({max_id, a, b});
    pos = end + 1;
  }
  if (edges.empty()) throw std::invalid_argument("empty query edge list");
  return from_edges(max_id + 1, edges);
}

int QueryGraph::num_edges() const {
  int total = 0;
  for (int a = 0; a < n_; ++a) total += degree(a);
  return total / 2;
}

int QueryGraph::degree(int a) const { return std::popcount(adj_[a]); }

int QueryGraph::min_degree() const {
  int m = n_ > 0 ? degree(0) : 0;
  for (int a = 1; a < n_; ++a) m = std::min(m, degree(a));
  return m;
}

bool QueryGraph::connected() const {
  if (n_ == 0) return false;
  std::uint8_t seen = 1u;
  for (;;) {
    std::uint8_t next = seen;
    for (int a = 0; a < n_; ++a) {
      if ((seen >> a) & 1u) next |= adj_[a];
    }
    if (next == seen) break;
    seen = next;
  }
  return std::popcount(seen) == n_;
}

std::vector<int> QueryGraph::neighbors(int a) const {
  std::vector<int> out;
  for (int b = 0; b < n_; ++b) {
    if (has_edge(a, b)) out.push_back(b);
  }
  return out;
}

SpanningTree build_spanning_tree(const QueryGraph& q, int root) {
  const int n = q.num_nodes();
  if (root < 0 || root >= n) throw std::invalid_argument("root out of range");
  if (!q.connected()) throw std::invalid_argument("query graph must be connected");

  SpanningTree t;
  t.visit_order.reserve(n);
  std::vector<int> parent_of(n, -1);
  std::vector<char> visited(n, 0);

  t.visit_order.push_back(root);
  visited[root] = 1;
  // Plain queue walk over visit_order; children in ascending node id.
  for (std::size_t head = 0; head < t.visit_order.size(); ++head) {
    const int u = t.visit_order[head];
    for (int v = 0; v < n; ++v) {
      if (q.has_edge(u, v) && !visited[v]) {
        visited[v] = 1;
        parent_of[v] = u;
        t.visit_order.push_back(v);
      }
    }
  }

  t.tree_parent.resize(n);
  t.nontree_edges.resize(n);
  for (int level = 0; level < n; ++level) {
    const int u = t.visit_order[level];
    t.tree_parent[level] = parent_of[u];
    for (int earlier = 0; earlier < level; ++earlier) {
      const int w = t.visit_order[earlier];
      if (q.has_edge(u, w) && w != parent_of[u]) {
        t.nontree_edges[level].push_back(w);
      }
    }
  }
  return t;
}

std::vector<NECClass> compute_nec(const QueryGraph& q) {
  const int n = q.num_nodes();
  // u ~ v iff N(u)\{v} == N(v)\{u}; flavor from whether u,v are adjacent.
  auto equivalent = [&](int u, int v) {
    std::uint8_t nu = q.neighbor_mask(u) & static_cast<std::uint8_t>(~(1u << v));
    std::uint8_t nv = q.neighbor_mask(v) & static_cast<std::uint8_t>(~(1u << u));
    return nu == nv;
  };

  std::vector<NECClass> classes;
  std::vector<char> assigned(n, 0);
  for (int u = 0; u < n; ++u) {
    if (assigned[u]) continue;
    NECClass cls;
    cls.members.push_back(u);
    assigned[u] = 1;
    for (int v = u + 1; v < n; ++v) {
      if (!assigned[v] && equivalent(u, v)) {
        cls.members.push_back(v);
        assigned[v] = 1;
      }
    }
    cls.flavor = (cls.members.size() >= 2 && q.has_edge(cls.members[0], cls.members[1]))
                     ? NecFlavor::MutuallyAdjacentClique
                     : NecFlavor::SharedNeighborhood;
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<UmoConstraint> generate_umo(const std::vector<NECClass>& classes,
                                        const std::vector<int>& visit_order) {
  std::vector<int> pos(visit_order.size());
  for (std::size_t p = 0; p < visit_order.size(); ++p) pos[visit_order[p]] = static_cast<int>(p);

  std::vector<UmoConstraint> constraints;
  for (const auto& cls : classes) {
    if (cls.members.size() < 2) continue;
    std::vector<int> ordered = cls.members;
    std::sort(ordered.begin(), ordered.end(),
              [&](int a, int b) { return pos[a] < pos[b]; });
    for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
      constraints.push_back(UmoConstraint{ordered[i], ordered[i + 1]});
    }
  }
  return constraints;
}

QueryPlan compile_plan(const QueryGraph& q) {
  const int n = q.num_nodes();
  int root = 0;
  for (int u = 1; u < n; ++u) {
    if (q.degree(u) > q.degree(root)) root = u;
  }

  QueryPlan plan;
  plan.query = q;
  SpanningTree tree = build_spanning_tree(q, root);
  plan.visit_order = tree.visit_order;
  plan.tree_parent = tree.tree_parent;
  plan.nontree_edges = tree.nontree_edges;
  plan.nec_classes = compute_nec(q);
  plan.umo_constraints = generate_umo(plan.nec_classes, plan.visit_order);
  plan.min_query_degree = q.min_degree();

  std::vector<int> pos(n);
  for (int p = 0; p < n; ++p) pos[plan.visit_order[p]] = p;

  plan.tree_parent_pos.resize(n, -1);
  plan.nontree_pos.resize(n);
  plan.umo_smaller_pos.resize(n);
  plan.remaining_edges.resize(n, 0);
  plan.next_is_adjacent.resize(n, 0);
  plan.next_umo_bound.resize(n, 0);

  for (int level = 0; level < n; ++level) {
    const int u = plan.visit_order[level];
    if (plan.tree_parent[level] >= 0) plan.tree_parent_pos[level] = pos[plan.tree_parent[level]];
    for (int w : plan.nontree_edges[level]) plan.nontree_pos[level].push_back(pos[w]);
    for (const auto& c : plan.umo_constraints) {
      if (c.larger == u) plan.umo_smaller_pos[level].push_back(pos[c.smaller]);
    }
    for (int v : q.neighbors(u)) {
      if (pos[v] > level) ++plan.remaining_edges[level];
    }
    if (level + 1 < n) {
      const int next = plan.visit_order[level + 1];
      plan.next_is_adjacent[level] = q.has_edge(u, next) ? 1 : 0;
      for (const auto& c : plan.umo_constraints) {
        if (c.smaller == u && c.larger == next) plan.next_umo_bound[level] = 1;
      }
    }
  }
  return plan;
}

}  // namespace trimatch
