#include "trimatch/frontier.hpp"

#include <algorithm>

namespace trimatch {

namespace {

// Probe the shorter list into the longer once the length ratio passes this.
constexpr std::size_t kProbeRatio = 32;

// Counts (or emits, when out != nullptr) the common vertices of two strictly
// ascending spans. Skips both prefixes <= floor first.
std::uint64_t intersect_sorted(std::span<const VertexId> a, std::span<const VertexId> b,
                               bool bounded, VertexId floor, VertexId* out) {
  if (bounded) {
    a = a.subspan(std::upper_bound(a.begin(), a.end(), floor) - a.begin());
    b = b.subspan(std::upper_bound(b.begin(), b.end(), floor) - b.begin());
  }
  if (a.size() > b.size()) std::swap(a, b);
  std::uint64_t count = 0;

  if (a.size() * kProbeRatio < b.size()) {
    for (VertexId x : a) {
      if (std::binary_search(b.begin(), b.end(), x)) {
        if (out != nullptr) out[count] = x;
        ++count;
      }
    }
    return count;
  }

  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      if (out != nullptr) out[count] = a[i];
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace

IntersectResult segmented_intersect(const Graph& g, const Frontier& pairs,
                                    const IntersectOptions& opts,
                                    const ExecPolicy& exec) {
  auto items = pairs.edges();
  const std::uint64_t n = items.size();

  IntersectResult result;
  result.counts.resize(n);
  parallel_for(n, exec, [&](std::uint64_t i) {
    const auto& e = items[i];
    result.counts[i] = intersect_sorted(g.neighbors(e.src), g.neighbors(e.dst),
                                        opts.above_dst_only, e.dst, nullptr);
  });

  if (opts.keep_listings) {
    result.listing_offsets.resize(n + 1);
    std::uint64_t running = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      result.listing_offsets[i] = running;
      running += result.counts[i];
    }
    result.listing_offsets[n] = running;
    result.listing_values.resize(running);
    parallel_for(n, exec, [&](std::uint64_t i) {
      const auto& e = items[i];
      intersect_sorted(g.neighbors(e.src), g.neighbors(e.dst), opts.above_dst_only,
                       e.dst, result.listing_values.data() + result.listing_offsets[i]);
    });
  }
  return result;
}

}  // namespace trimatch
