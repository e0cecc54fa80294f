#pragma once

#include <cstddef>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace gsum {

/// Number of workers OpenMP would use for jobs <= 0.
inline int hardware_jobs() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Index-parallel loop: body(i) for i in [0, n). jobs == 1 runs the plain
/// serial loop (the reference path used by the tests); jobs != 1 fans out
/// with OpenMP when available. Each index must be independent and write only
/// its own outputs, so results do not depend on the thread count.
template <typename Body>
void parallel_for(std::size_t n, int jobs, Body&& body) {
#if defined(_OPENMP)
    if (jobs != 1 && n > 1) {
        const int threads = jobs <= 0 ? omp_get_max_threads() : jobs;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)jobs;
#endif
    for (std::size_t i = 0; i < n; ++i)
        body(i);
}

} // namespace gsum
