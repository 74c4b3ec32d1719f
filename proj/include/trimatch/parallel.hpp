#pragma once

#include <cstdint>
#include <thread>

namespace trimatch {

// Worker-count knob for the bulk-synchronous operators. workers == 0 picks
// the hardware concurrency. All operators that take an ExecPolicy produce
// output whose position is computed by prefix sums over item indices, so the
// result sequence does not depend on how items are assigned to workers.
struct ExecPolicy {
  unsigned workers = 0;

  unsigned resolved_workers() const {
    if (workers > 0) return workers;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
  }
};

namespace detail {
// Below this many items a parallel region costs more than it saves.
inline constexpr std::uint64_t kSerialCutoff = 2048;
}  // namespace detail

// Invokes f(i) for every i in [0, n), exactly once each.
template <class F>
void parallel_for(std::uint64_t n, const ExecPolicy& exec, F&& f) {
  const unsigned w = exec.resolved_workers();
  if (w <= 1 || n < detail::kSerialCutoff) {
    for (std::uint64_t i = 0; i < n; ++i) f(i);
    return;
  }
#pragma omp parallel for num_threads(static_cast<int>(w)) schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    f(static_cast<std::uint64_t>(i));
  }
}

}  // namespace trimatch
