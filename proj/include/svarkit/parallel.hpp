#pragma once

// Parallel kernel driver. Every data-parallel loop in the toolkit goes
// through parallel_for, which has an OpenMP implementation and a serial
// reference implementation selected at call time. Results must not depend
// on the mode: each iteration writes only to its own slot and any
// randomness is seeded per-iteration (see rng.hpp), so the two modes are
// bit-identical and the serial path stays usable as a test oracle.

#include <cstddef>
#include <cstdint>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace svarkit {

enum class ExecMode { serial, openmp };

inline int hardware_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <class Body>
void parallel_for(std::size_t n, ExecMode mode, Body&& body) {
#if defined(_OPENMP)
  if (mode == ExecMode::openmp && n > 1) {
    // dynamic schedule: iterations (bootstrap replications, lag windows,
    // optimizer starts) have uneven cost
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)mode;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace svarkit
