#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "trimatch/graph.hpp"
#include "trimatch/parallel.hpp"

namespace trimatch {

// One record of an edge-kind frontier. payload is a caller-defined tag that
// advance propagates from input to output; the matcher uses it as the
// partial-table row index.
struct EdgeItem {
  VertexId src = 0;
  VertexId dst = 0;
  std::uint64_t payload = 0;

  friend bool operator==(const EdgeItem&, const EdgeItem&) = default;
};

// Dense sequence of active vertices or edges. Operators never leave
// sentinel/invalid entries behind: outputs are compacted before they return.
class Frontier {
 public:
  enum class Kind { Vertex, Edge };

  Frontier() : kind_(Kind::Vertex) {}

  static Frontier of_vertices(std::vector<VertexId> items) {
    Frontier f;
    f.kind_ = Kind::Vertex;
    f.vertices_ = std::move(items);
    return f;
  }

  static Frontier of_edges(std::vector<EdgeItem> items) {
    Frontier f;
    f.kind_ = Kind::Edge;
    f.edges_ = std::move(items);
    return f;
  }

  // 0, 1, ..., n-1; the usual seed for whole-graph passes.
  static Frontier all_vertices(const Graph& g) {
    std::vector<VertexId> ids(g.num_vertices());
    std::iota(ids.begin(), ids.end(), VertexId{0});
    return of_vertices(std::move(ids));
  }

  Kind kind() const { return kind_; }
  std::size_t size() const {
    return kind_ == Kind::Vertex ? vertices_.size() : edges_.size();
  }
  bool empty() const { return size() == 0; }

  std::span<const VertexId> vertices() const {
    if (kind_ != Kind::Vertex) throw std::logic_error("Frontier: not vertex-kind");
    return vertices_;
  }
  std::span<const EdgeItem> edges() const {
    if (kind_ != Kind::Edge) throw std::logic_error("Frontier: not edge-kind");
    return edges_;
  }

 private:
  Kind kind_;
  std::vector<VertexId> vertices_;
  std::vector<EdgeItem> edges_;
};

namespace detail {

// Exclusive scan; returns the total. offsets must have n+1 slots.
inline std::uint64_t exclusive_scan(std::span<const std::uint32_t> counts,
                                    std::vector<std::uint64_t>& offsets) {
  std::uint64_t running = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    offsets[i] = running;
    running += counts[i];
  }
  offsets[counts.size()] = running;
  return running;
}

}  // namespace detail

// Advance: expands every incident edge of every frontier vertex exactly once
// through fn(src, dst, item_index) and keeps the accepted destinations.
// item_index is the item's position in the input frontier; for edge-kind
// output it is propagated as the payload, together with the source vertex.
//
// Output slots are assigned by a count / prefix-sum / scatter pass over item
// indices, so the output sequence is identical for any worker count: item
// order first, adjacency order within an item.
template <class EdgeFn>
Frontier advance(const Graph& g, const Frontier& f, Frontier::Kind out_kind,
                 EdgeFn&& fn, const ExecPolicy& exec = {}) {
  static_assert(std::is_invocable_r_v<bool, EdgeFn, VertexId, VertexId, std::uint64_t>,
                "advance functor must be bool(src, dst, item_index)");
  auto sources = f.vertices();
  const std::uint64_t n = sources.size();

  // Segment offsets sized by source degree: room for every incident edge.
  std::vector<std::uint64_t> seg(n + 1);
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    seg[i] = total;
    total += g.degree(sources[i]);
  }
  seg[n] = total;

  std::vector<VertexId> scratch(total);
  std::vector<std::uint32_t> counts(n, 0);
  parallel_for(n, exec, [&](std::uint64_t i) {
    const VertexId src = sources[i];
    std::uint64_t out = seg[i];
    std::uint32_t kept = 0;
    for (VertexId dst : g.neighbors(src)) {
      if (fn(src, dst, i)) {
        scratch[out + kept] = dst;
        ++kept;
      }
    }
    counts[i] = kept;
  });

  std::vector<std::uint64_t> offsets(n + 1);
  const std::uint64_t out_n = detail::exclusive_scan(counts, offsets);

  if (out_kind == Frontier::Kind::Vertex) {
    std::vector<VertexId> out(out_n);
    parallel_for(n, exec, [&](std::uint64_t i) {
      for (std::uint32_t k = 0; k < counts[i]; ++k)
        out[offsets[i] + k] = scratch[seg[i] + k];
    });
    return Frontier::of_vertices(std::move(out));
  }
  std::vector<EdgeItem> out(out_n);
  parallel_for(n, exec, [&](std::uint64_t i) {
    for (std::uint32_t k = 0; k < counts[i]; ++k)
      out[offsets[i] + k] = EdgeItem{sources[i], scratch[seg[i] + k], i};
  });
  return Frontier::of_edges(std::move(out));
}

// Filter: keeps the items satisfying pred, preserving relative order.
// pred takes a VertexId for vertex-kind input, const EdgeItem& for edge-kind.
template <class Pred>
Frontier filter(const Frontier& f, Pred&& pred, const ExecPolicy& exec = {}) {
  auto run = [&](auto items, auto make) {
    const std::uint64_t n = items.size();
    std::vector<std::uint32_t> keep(n, 0);
    parallel_for(n, exec, [&](std::uint64_t i) { keep[i] = pred(items[i]) ? 1 : 0; });
    std::vector<std::uint64_t> offsets(n + 1);
    const std::uint64_t out_n = detail::exclusive_scan(keep, offsets);
    std::vector<std::remove_cv_t<typename decltype(items)::value_type>> out(out_n);
    parallel_for(n, exec, [&](std::uint64_t i) {
      if (keep[i]) out[offsets[i]] = items[i];
    });
    return make(std::move(out));
  };

  if (f.kind() == Frontier::Kind::Vertex) {
    static_assert(std::is_invocable_r_v<bool, Pred, VertexId> ||
                  std::is_invocable_r_v<bool, Pred, const EdgeItem&>);
    if constexpr (std::is_invocable_r_v<bool, Pred, VertexId>) {
      return run(f.vertices(), [](auto v) { return Frontier::of_vertices(std::move(v)); });
    } else {
      throw std::logic_error("filter: predicate does not accept VertexId");
    }
  }
  if constexpr (std::is_invocable_r_v<bool, Pred, const EdgeItem&>) {
    return run(f.edges(), [](auto v) { return Frontier::of_edges(std::move(v)); });
  } else {
    throw std::logic_error("filter: predicate does not accept EdgeItem");
  }
}

// Compute: applies op(item_index, item) to every item exactly once, in
// parallel. op may write per-item results to caller-owned storage but must
// not introduce cross-item dependences. The frontier itself is not changed.
template <class Op>
void compute(const Frontier& f, Op&& op, const ExecPolicy& exec = {}) {
  if (f.kind() == Frontier::Kind::Vertex) {
    auto items = f.vertices();
    if constexpr (std::is_invocable_v<Op, std::uint64_t, VertexId>) {
      parallel_for(items.size(), exec, [&](std::uint64_t i) { op(i, items[i]); });
    } else {
      throw std::logic_error("compute: op does not accept (index, VertexId)");
    }
  } else {
    auto items = f.edges();
    if constexpr (std::is_invocable_v<Op, std::uint64_t, const EdgeItem&>) {
      parallel_for(items.size(), exec, [&](std::uint64_t i) { op(i, items[i]); });
    } else {
      throw std::logic_error("compute: op does not accept (index, EdgeItem)");
    }
  }
}

struct IntersectOptions {
  // Count only common vertices w with w > dst. With sorted adjacency this
  // intersects the suffixes past dst.
  bool above_dst_only = false;
  bool keep_listings = false;
};

struct IntersectResult {
  std::vector<std::uint64_t> counts;  // one per input pair
  // CSR layout of the common vertices, present when keep_listings was set.
  std::vector<std::uint64_t> listing_offsets;
  std::vector<VertexId> listing_values;

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
};

// Segmented intersection: counts (and optionally lists) N(src) ∩ N(dst) for
// every pair in an edge-kind frontier.
IntersectResult segmented_intersect(const Graph& g, const Frontier& pairs,
                                    const IntersectOptions& opts = {},
                                    const ExecPolicy& exec = {});

}  // namespace trimatch
