/// Minimal OpenMP-backed loop helpers. Every parallel kernel in the toolkit
/// is driven through parallel_for so that a serial reference path (jobs == 1
/// or an OpenMP-free build) is always available for testing and benchmarks.

#pragma once

#include <utility>

#ifdef BOSETOPO_HAVE_OPENMP
#include <omp.h>
#endif

namespace bosetopo {

/// Resolves a jobs request: values >= 1 are taken literally; 0 or negative
/// means "hardware default" (all OpenMP threads, or 1 without OpenMP).
inline int resolve_jobs(int jobs) {
  if (jobs >= 1) return jobs;
#ifdef BOSETOPO_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Runs f(i) for i in [0, n) with at most `jobs` worker threads. The body
/// must be safe to run concurrently for distinct i (each i owns its output
/// slot). jobs <= 1 runs serially in index order.
template <typename F>
void parallel_for(int n, int jobs, F&& f) {
  jobs = resolve_jobs(jobs);
#ifdef BOSETOPO_HAVE_OPENMP
  if (jobs > 1) {
#pragma omp parallel for num_threads(jobs) schedule(dynamic)
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
#endif
  for (int i = 0; i < n; ++i) f(i);
}

/// Serial reference loop, kept distinct so benchmarks and tests can compare
/// against the parallel path explicitly.
template <typename F>
void serial_for(int n, F&& f) {
  for (int i = 0; i < n; ++i) f(i);
}

}  // namespace bosetopo
