#ifndef KTORI_PARALLEL_HPP
#define KTORI_PARALLEL_HPP

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kt {

// Hot loops (operator assembly, Jacobi sweeps, trajectory batches) run either
// through OpenMP or through the plain serial loop kept as reference; tests
// compare the two paths.
enum class Exec { serial, parallel };

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <class F>
void parallel_for(int count, Exec exec, F&& body) {
#ifdef _OPENMP
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
#else
    (void)exec;
#endif
    for (int i = 0; i < count; ++i) body(i);
}

}  // namespace kt

#endif
