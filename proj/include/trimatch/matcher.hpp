#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trimatch/graph.hpp"
#include "trimatch/parallel.hpp"
#include "trimatch/query_plan.hpp"

namespace trimatch {

// Surviving data vertices after NE-based pruning, with per-vertex counts of
// neighbors still in the set. effective_degree[u] == |N(u) ∩ members| for
// every u, member or not.
struct CandidateSet {
  std::vector<std::uint8_t> member;
  std::vector<std::uint32_t> effective_degree;
  std::uint32_t peel_rounds = 0;

  bool contains(VertexId u) const { return member[u] != 0; }
  std::uint64_t count() const {
    std::uint64_t n = 0;
    for (auto m : member) n += m;
    return n;
  }
};

// Fixed-width table of partial embeddings: one row per valid partial result,
// width slots per row, the first level() slots filled (slot p holds the data
// vertex matched to query node visit_order[p]), the rest kInvalidVertex.
// Rows are dense: expansion drops unfruitful rows during compaction, so every
// stored row is valid.
class PartialTable {
 public:
  explicit PartialTable(std::uint32_t width) : width_(width) {}

  std::uint32_t width() const { return width_; }
  std::uint32_t level() const { return level_; }
  std::uint64_t num_rows() const { return width_ == 0 ? 0 : cells_.size() / width_; }

  std::span<const VertexId> row(std::uint64_t r) const {
    return {cells_.data() + r * width_, width_};
  }
  std::span<const VertexId> row_prefix(std::uint64_t r) const {
    return {cells_.data() + r * width_, level_};
  }

  std::vector<VertexId>& cells() { return cells_; }
  const std::vector<VertexId>& cells() const { return cells_; }
  void set_level(std::uint32_t level) { level_ = level; }

 private:
  std::uint32_t width_;
  std::uint32_t level_ = 0;
  std::vector<VertexId> cells_;
};

struct LevelStats {
  std::uint64_t rows_in = 0;
  std::uint64_t edges_visited = 0;
  std::uint64_t rows_out = 0;          // surviving rows after compaction
  std::uint64_t rows_masked = 0;       // input rows with no surviving extension
  std::uint64_t lookahead_pruned = 0;  // extensions that only look-ahead rejected
  double millis = 0.0;
};

struct MatchStats {
  double filter_millis = 0.0;
  double verify_millis = 0.0;
  std::uint64_t candidates = 0;
  std::uint32_t peel_rounds = 0;
  std::uint64_t seed_rows = 0;
  std::vector<LevelStats> levels;  // levels[k]: expansion producing k+2 filled slots

  double total_millis() const { return filter_millis + verify_millis; }
  // Surviving rows holding `slots` filled slots, after compaction.
  std::uint64_t rows_at(std::uint32_t slots) const {
    return slots <= 1 ? seed_rows : levels[slots - 2].rows_out;
  }
};

struct MatchOptions {
  int lookahead = 2;          // 0, 1, or 2
  bool keep_listings = false;
  ExecPolicy exec{};
};

struct MatchResult {
  std::uint64_t count = 0;
  std::optional<PartialTable> listings;
  MatchStats stats;
};

// NE filtering to fixpoint: keeps vertices with degree >= the query's minimum
// degree, then repeatedly drops members whose effective degree falls below
// that threshold. For the triangle this yields exactly the 2-core.
CandidateSet filter_candidates(const Graph& g, const QueryPlan& plan,
                               const ExecPolicy& exec = {});

// Necessary-condition test: false guarantees the extension of the row prefix
// by w at `level` cannot reach a complete embedding. k=1 checks w's unused
// candidate neighbors against the query edges still to be matched; k=2
// additionally requires a candidate neighbor satisfying the next level's
// ordering bound. prefix holds the row's `level` filled slots; w has already
// passed the membership/injectivity/connection/ordering checks.
bool lookahead(const Graph& g, const QueryPlan& plan, const CandidateSet& c,
               std::span<const VertexId> prefix, VertexId w, std::uint32_t level,
               int k);

// One bulk-synchronous verification step: expands every row from the data
// vertex bound to the tree parent of visit_order[level], keeps destinations
// passing membership, injectivity, connection, ordering, and look-ahead
// tests, and returns the compacted table of extended rows.
PartialTable expand_level(const Graph& g, const QueryPlan& plan,
                          const CandidateSet& c, const PartialTable& table,
                          std::uint32_t level, const MatchOptions& opts = {},
                          LevelStats* stats = nullptr);

// Full pipeline: filter, seed one row per candidate, expand level by level
// until rows are complete embeddings. count is the number of complete rows
// (the flat-table size divided by the query width).
MatchResult match(const Graph& g, const QueryPlan& plan,
                  const MatchOptions& opts = {});

// Triangle convenience wrapper; listing rows satisfy v1 < v2 < v3.
MatchResult count_triangles(const Graph& g, const MatchOptions& opts = {});

}  // namespace trimatch
