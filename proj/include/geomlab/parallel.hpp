// Execution policy for the data-parallel kernels.  Every kernel takes an Exec
// and must produce bit-identical results for Exec::serial and Exec::openmp at
// any worker count.  The pattern used throughout: parallel loops write to
// per-index slots, and reductions are done over fixed-size blocks whose
// partial results are merged serially in index order.
#pragma once

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace geomlab {

enum class Exec { serial, openmp };

// Block size for deterministic reductions.  Fixed so the summation tree does
// not depend on the number of workers.
inline constexpr std::int64_t kReduceBlock = 1024;

template <class F>
void par_for(Exec exec, std::int64_t n, F&& body) {
  if (exec == Exec::openmp) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) body(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) body(i);
  }
}

// Deterministic sum of body(i) for i in [0,n): block partial sums in parallel,
// then a serial left-to-right merge.
template <class F>
double par_sum(Exec exec, std::int64_t n, F&& body) {
  const std::int64_t nblk = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> partial(static_cast<std::size_t>(nblk > 0 ? nblk : 0), 0.0);
  par_for(exec, nblk, [&](std::int64_t b) {
    const std::int64_t lo = b * kReduceBlock;
    const std::int64_t hi = lo + kReduceBlock < n ? lo + kReduceBlock : n;
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += body(i);
    partial[static_cast<std::size_t>(b)] = s;
  });
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

// Deterministic argmin: returns the smallest value of body(i) together with
// the lowest index attaining it.
struct MinWitness {
  double value;
  std::int64_t index;
};

template <class F>
MinWitness par_min(Exec exec, std::int64_t n, F&& body) {
  const std::int64_t nblk = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<MinWitness> partial(static_cast<std::size_t>(nblk > 0 ? nblk : 0));
  par_for(exec, nblk, [&](std::int64_t b) {
    const std::int64_t lo = b * kReduceBlock;
    const std::int64_t hi = lo + kReduceBlock < n ? lo + kReduceBlock : n;
    MinWitness w{0.0, -1};
    for (std::int64_t i = lo; i < hi; ++i) {
      const double v = body(i);
      if (w.index < 0 || v < w.value) w = {v, i};
    }
    partial[static_cast<std::size_t>(b)] = w;
  });
  MinWitness best{0.0, -1};
  for (const MinWitness& w : partial)
    if (w.index >= 0 && (best.index < 0 || w.value < best.value)) best = w;
  return best;
}

inline int worker_count(Exec exec) {
#ifdef _OPENMP
  if (exec == Exec::openmp) return omp_get_max_threads();
#else
  (void)exec;
#endif
  return 1;
}

}  // namespace geomlab
