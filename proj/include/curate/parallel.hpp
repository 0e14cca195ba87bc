#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace curate {

// 0 or negative requests the hardware default.
inline int effective_threads(int requested) {
#ifdef _OPENMP
    if (requested <= 0) return omp_get_max_threads();
    return requested;
#else
    (void)requested;
    return 1;
#endif
}

// Data-parallel index loop. fn(i) must touch only state owned by index i;
// results land in pre-sized slots, so output is identical to the serial
// loop regardless of scheduling. threads == 1 runs the plain serial loop,
// which doubles as the reference path in tests and benchmarks.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
#ifdef _OPENMP
    if (threads != 1 && n > 1) {
        const int t = effective_threads(threads);
#pragma omp parallel for schedule(dynamic, 16) num_threads(t)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            fn(static_cast<std::size_t>(i));
        }
        return;
    }
#else
    (void)threads;
#endif
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace curate
