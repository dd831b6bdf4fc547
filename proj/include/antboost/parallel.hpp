#ifndef ANTBOOST_PARALLEL_HPP
#define ANTBOOST_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace antboost {

/// Execution policy for the Monte Carlo inner loops. Every loop body owns
/// its derived RNG stream and writes to its own index, so `parallel` and
/// `serial` produce bit-identical results; `serial` is kept as the
/// reference path for tests and benchmarking.
enum class ExecMode { serial, parallel };

/// Index-parallel map. Exceptions thrown by the body are captured and
/// rethrown after the loop (the first one wins).
template <typename Fn>
void for_each_index(std::size_t count, ExecMode mode, Fn&& fn) {
#ifdef _OPENMP
    if (mode == ExecMode::parallel) {
        std::exception_ptr error = nullptr;
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(count); ++i) {
            try {
                fn(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(antboost_for_each_index_error)
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < count; ++i) fn(i);
}

/// Number of worker threads the parallel mode will use.
inline int worker_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Caps the OpenMP thread pool; 0 leaves the runtime default in place.
inline void set_worker_count(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

} // namespace antboost

#endif
