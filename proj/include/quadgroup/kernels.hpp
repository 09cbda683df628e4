#pragma once

// Data-parallel scan kernels.  Every exhaustive check in the library is a
// search for the least index whose predicate fails, or a pure fill over an
// index range.  The OpenMP versions are what the library calls; the serial
// versions are kept as the reference the tests and the benchmark compare
// against.

#include <algorithm>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qg::kernels {

namespace serial {

template <class Pred>
std::uint64_t first_failure(std::uint64_t count, Pred&& fails) {
  for (std::uint64_t i = 0; i < count; ++i)
    if (fails(i)) return i;
  return count;
}

template <class Fn>
void for_each(std::uint64_t count, Fn&& fn) {
  for (std::uint64_t i = 0; i < count; ++i) fn(i);
}

}  // namespace serial

inline constexpr std::uint64_t kBlock = 4096;

/// Least i in [0, count) with fails(i), or count when none fails.  Blocks are
/// handed out in increasing order and a block is skipped once a failure below
/// its start is known, so the answer equals the serial one.
template <class Pred>
std::uint64_t first_failure(std::uint64_t count, Pred&& fails) {
  if (count <= kBlock) return serial::first_failure(count, fails);
  const auto blocks = static_cast<std::int64_t>((count + kBlock - 1) / kBlock);
  std::uint64_t best = count;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::uint64_t lo = static_cast<std::uint64_t>(b) * kBlock;
    std::uint64_t seen;
#pragma omp atomic read
    seen = best;
    if (lo >= seen) continue;
    const std::uint64_t hi = std::min(count, lo + kBlock);
    for (std::uint64_t i = lo; i < hi; ++i) {
      if (fails(i)) {
#pragma omp critical(qg_first_failure)
        best = std::min(best, i);
        break;
      }
    }
  }
  return best;
}

template <class Fn>
void for_each(std::uint64_t count, Fn&& fn) {
  if (count <= kBlock) return serial::for_each(count, fn);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) fn(static_cast<std::uint64_t>(i));
}

inline int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace qg::kernels
