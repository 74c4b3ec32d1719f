#include "trimatch/matcher.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>

#include "trimatch/frontier.hpp"

namespace trimatch {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Connection/ordering tests (a)-(d) for extending a row prefix by w at
// `level`. The tree edge itself is implicit: w comes out of an advance over
// the tree parent's neighbors.
struct VerifyContext {
  const Graph& g;
  const QueryPlan& plan;
  const CandidateSet& c;
  std::uint32_t level;

  bool accept(std::span<const VertexId> prefix, VertexId w) const {
    if (!c.contains(w)) return false;
    for (VertexId used : prefix) {
      if (used == w) return false;
    }
    for (int p : plan.nontree_pos[level]) {
      if (!g.has_edge(prefix[p], w)) return false;
    }
    for (int p : plan.umo_smaller_pos[level]) {
      if (prefix[p] >= w) return false;
    }
    return true;
  }
};

}  // namespace

CandidateSet filter_candidates(const Graph& g, const QueryPlan& plan,
                               const ExecPolicy& exec) {
  const VertexId nv = g.num_vertices();
  const std::uint32_t threshold = static_cast<std::uint32_t>(plan.min_query_degree);

  CandidateSet c;
  c.member.assign(nv, 0);
  c.effective_degree.assign(nv, 0);

  Frontier all = Frontier::all_vertices(g);
  compute(all, [&](std::uint64_t, VertexId u) {
    c.member[u] = g.degree(u) >= threshold ? 1 : 0;
  }, exec);

  // NE per vertex: neighbors currently in the set.
  compute(all, [&](std::uint64_t, VertexId u) {
    std::uint32_t ne = 0;
    for (VertexId v : g.neighbors(u)) ne += c.member[v];
    c.effective_degree[u] = ne;
  }, exec);

  // Peel to fixpoint, one bulk-synchronous round per wave of removals. A
  // removed vertex decrements every neighbor's NE exactly once; the unique
  // decrement that takes a member's NE from threshold to threshold-1
  // schedules that member for the next round.
  Frontier dead = filter(all, [&](VertexId u) {
    return c.member[u] != 0 && c.effective_degree[u] < threshold;
  }, exec);

  while (!dead.empty()) {
    ++c.peel_rounds;
    compute(dead, [&](std::uint64_t, VertexId u) { c.member[u] = 0; }, exec);
    dead = advance(g, dead, Frontier::Kind::Vertex,
                   [&](VertexId, VertexId v, std::uint64_t) {
                     std::atomic_ref<std::uint32_t> ne(c.effective_degree[v]);
                     const std::uint32_t old = ne.fetch_sub(1, std::memory_order_relaxed);
                     return c.member[v] != 0 && old == threshold;
                   },
                   exec);
  }
  return c;
}

bool lookahead(const Graph& g, const QueryPlan& plan, const CandidateSet& c,
               std::span<const VertexId> prefix, VertexId w, std::uint32_t level,
               int k) {
  if (k <= 0) return true;
  const auto nbrs = g.neighbors(w);

  // 1-look-ahead: the query edges from visit_order[level] to still-unmatched
  // nodes each need a distinct unused candidate neighbor of w.
  const int needed = plan.remaining_edges[level];
  if (needed > 0) {
    std::uint32_t avail = c.effective_degree[w];
    for (VertexId used : prefix) {
      if (c.contains(used) && std::binary_search(nbrs.begin(), nbrs.end(), used)) {
        --avail;
      }
    }
    if (avail < static_cast<std::uint32_t>(needed)) return false;
  }

  // 2-look-ahead: when the next query node connects to this one, some unused
  // candidate neighbor of w must satisfy the ordering bound the next level
  // imposes on it.
  if (k >= 2 && level + 1 < static_cast<std::uint32_t>(plan.width()) &&
      plan.next_is_adjacent[level]) {
    VertexId lower = 0;
    bool bounded = false;
    for (int p : plan.umo_smaller_pos[level + 1]) {
      const VertexId bound = p == static_cast<int>(level) ? w : prefix[p];
      if (!bounded || bound > lower) lower = bound;
      bounded = true;
    }
    auto begin = bounded ? std::upper_bound(nbrs.begin(), nbrs.end(), lower)
                         : nbrs.begin();
    bool found = false;
    for (auto it = begin; it != nbrs.end(); ++it) {
      const VertexId x = *it;
      if (!c.contains(x)) continue;
      if (std::find(prefix.begin(), prefix.end(), x) != prefix.end()) continue;
      if (x == w) continue;
      found = true;
      break;
    }
    if (!found) return false;
  }
  return true;
}

PartialTable expand_level(const Graph& g, const QueryPlan& plan,
                          const CandidateSet& c, const PartialTable& table,
                          std::uint32_t level, const MatchOptions& opts,
                          LevelStats* stats) {
  const auto start = Clock::now();
  const std::uint32_t width = table.width();
  const std::uint64_t rows = table.num_rows();
  if (level < 1 || level >= width || table.level() != level) {
    throw std::invalid_argument("expand_level: level/table mismatch");
  }

  const int parent_pos = plan.tree_parent_pos[level];
  std::vector<VertexId> sources(rows);
  parallel_for(rows, opts.exec, [&](std::uint64_t r) {
    sources[r] = table.row(r)[parent_pos];
  });

  VerifyContext verify{g, plan, c, table, level};
  std::atomic<std::uint64_t> pruned{0};
  Frontier extensions = advance(
      g, Frontier::of_vertices(std::move(sources)), Frontier::Kind::Edge,
      [&](VertexId, VertexId w, std::uint64_t row) {
        const auto prefix = table.row_prefix(row);
        if (!verify.accept(prefix, w)) return false;
        if (opts.lookahead > 0 &&
            !lookahead(g, plan, c, prefix, w, level, opts.lookahead)) {
          pruned.fetch_add(1, std::memory_order_relaxed);
          return false;
        }
        return true;
      },
      opts.exec);

  // Write_to_Partial: one extended row per accepted destination. The advance
  // output is already compacted, ordered by (row, adjacency).
  auto accepted = extensions.edges();
  PartialTable next(width);
  next.set_level(level + 1);
  next.cells().assign(accepted.size() * width, kInvalidVertex);
  parallel_for(accepted.size(), opts.exec, [&](std::uint64_t i) {
    const auto& e = accepted[i];
    const auto prefix = table.row_prefix(e.payload);
    VertexId* out = next.cells().data() + i * width;
    std::copy(prefix.begin(), prefix.end(), out);
    out[level] = e.dst;
  });

  if (stats != nullptr) {
    stats->rows_in = rows;
    stats->rows_out = accepted.size();
    stats->lookahead_pruned = pruned.load();
    std::uint64_t edges = 0;
    for (std::uint64_t r = 0; r < rows; ++r) edges += g.degree(table.row(r)[parent_pos]);
    stats->edges_visited = edges;
    std::uint64_t fruitful = 0;
    for (std::uint64_t i = 0; i < accepted.size(); ++i) {
      if (i == 0 || accepted[i].payload != accepted[i - 1].payload) ++fruitful;
    }
    stats->rows_masked = rows - fruitful;
    stats->millis = millis_since(start);
  }
  return next;
}

namespace {

// Count-only variant of the final expansion: applies the same per-edge tests
// but never materializes the extended rows.
std::uint64_t count_final_level(const Graph& g, const QueryPlan& plan,
                                const CandidateSet& c, const PartialTable& table,
                                std::uint32_t level, const MatchOptions& opts,
                                LevelStats* stats) {
  const auto start = Clock::now();
  const std::uint64_t rows = table.num_rows();
  const int parent_pos = plan.tree_parent_pos[level];
  VerifyContext verify{g, plan, c, table, level};

  std::vector<std::uint32_t> counts(rows, 0);
  std::atomic<std::uint64_t> pruned{0};
  parallel_for(rows, opts.exec, [&](std::uint64_t r) {
    const auto prefix = table.row_prefix(r);
    const VertexId src = prefix[parent_pos];
    std::uint32_t kept = 0;
    for (VertexId w : g.neighbors(src)) {
      if (!verify.accept(prefix, w)) continue;
      if (opts.lookahead > 0 && !lookahead(g, plan, c, prefix, w, level, opts.lookahead)) {
        pruned.fetch_add(1, std::memory_order_relaxed);
        continue;
      }
      ++kept;
    }
    counts[r] = kept;
  });

  std::uint64_t total = 0, fruitful = 0, edges = 0;
  for (std::uint64_t r = 0; r < rows; ++r) {
    total += counts[r];
    fruitful += counts[r] > 0 ? 1 : 0;
    edges += g.degree(table.row(r)[parent_pos]);
  }
  if (stats != nullptr) {
    stats->rows_in = rows;
    stats->rows_out = total;
    stats->rows_masked = rows - fruitful;
    stats->lookahead_pruned = pruned.load();
    stats->edges_visited = edges;
    stats->millis = millis_since(start);
  }
  return total;
}

}  // namespace

MatchResult match(const Graph& g, const QueryPlan& plan, const MatchOptions& opts) {
  if (opts.lookahead < 0 || opts.lookahead > 2) {
    throw std::invalid_argument("lookahead must be 0, 1, or 2");
  }
  MatchResult result;
  const std::uint32_t width = static_cast<std::uint32_t>(plan.width());

  const auto filter_start = Clock::now();
  CandidateSet c = filter_candidates(g, plan, opts.exec);
  result.stats.filter_millis = millis_since(filter_start);
  result.stats.peel_rounds = c.peel_rounds;
  result.stats.candidates = c.count();

  const auto verify_start = Clock::now();

  // Seed: one level-1 row per candidate. No ordering constraint can mention
  // the root's slot as the larger side, so membership is the whole test.
  Frontier seeds = filter(Frontier::all_vertices(g),
                          [&](VertexId u) { return c.contains(u); }, opts.exec);
  PartialTable table(width);
  table.set_level(1);
  auto seed_ids = seeds.vertices();
  table.cells().assign(seed_ids.size() * width, kInvalidVertex);
  parallel_for(seed_ids.size(), opts.exec, [&](std::uint64_t i) {
    table.cells()[i * width] = seed_ids[i];
  });
  result.stats.seed_rows = table.num_rows();

  if (width == 1) {
    result.count = table.num_rows();
    if (opts.keep_listings) result.listings = std::move(table);
    result.stats.verify_millis = millis_since(verify_start);
    return result;
  }

  result.stats.levels.resize(width - 1);
  for (std::uint32_t level = 1; level < width; ++level) {
    LevelStats* ls = &result.stats.levels[level - 1];
    if (level == width - 1 && !opts.keep_listings) {
      result.count = count_final_level(g, plan, c, table, level, opts, ls);
      result.stats.verify_millis = millis_since(verify_start);
      return result;
    }
    table = expand_level(g, plan, c, table, level, opts, ls);
  }

  result.count = table.num_rows();
  if (opts.keep_listings) result.listings = std::move(table);
  result.stats.verify_millis = millis_since(verify_start);
  return result;
}

MatchResult count_triangles(const Graph& g, const MatchOptions& opts) {
  return match(g, compile_plan(QueryGraph::triangle()), opts);
}

}  // namespace trimatch
