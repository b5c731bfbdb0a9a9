#ifndef QGC_PARALLEL_HPP
#define QGC_PARALLEL_HPP

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qgc {

/// Execution policy for the data-parallel kernels. Serial and parallel runs
/// of the same kernel produce bit-identical results: work is split into
/// fixed-size chunks with deterministic per-chunk seeds and reduced in chunk
/// order, never in thread-completion order.
enum class ExecPolicy { serial, parallel };

/// Worker count for parallel regions, capped by the QGC_THREADS environment
/// variable when it is set to a positive integer.
int worker_threads();

template <typename Fn>
void for_each_index(int count, ExecPolicy policy, Fn&& fn) {
#ifdef _OPENMP
  if (policy == ExecPolicy::parallel && count > 1) {
    const int nthreads = worker_threads();
#pragma omp parallel for num_threads(nthreads) schedule(dynamic)
    for (int i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
#else
  (void)policy;
#endif
  for (int i = 0; i < count; ++i) {
    fn(i);
  }
}

}  // namespace qgc

#endif
