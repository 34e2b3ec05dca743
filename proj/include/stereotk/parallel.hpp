#pragma once

#include <cstdint>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stereotk/error.hpp"

namespace stereotk {

// How a data-parallel loop is executed.  `workers` is the number of OpenMP
// threads to use; 1 (or less) runs the plain serial loop with no OpenMP
// region at all, so a serial reference path always exists.  `chunk` > 0
// requests a fixed static chunk size, otherwise iterations are split evenly.
struct ExecPlan {
    int workers = 1;
    int chunk = 0;
};

// Run fn(i) for every i in [0, count).  Iterations must be independent: the
// partitioning across workers is unspecified and no synchronisation is done
// between them.  Exceptions thrown by fn are captured inside the parallel
// region and the first one is rethrown to the caller once all threads have
// finished, so a throwing iteration never terminates the process.
template <typename Fn>
void parallel_for(std::int64_t count, const ExecPlan& plan, Fn&& fn) {
    if (count <= 0) {
        return;
    }
    if (plan.workers <= 1) {
        for (std::int64_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
#ifdef _OPENMP
    std::exception_ptr error;
    std::mutex error_mutex;
    if (plan.chunk > 0) {
        const int chunk = plan.chunk;
#pragma omp parallel for num_threads(plan.workers) schedule(static, chunk)
        for (std::int64_t i = 0; i < count; ++i) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        }
    } else {
#pragma omp parallel for num_threads(plan.workers) schedule(static)
        for (std::int64_t i = 0; i < count; ++i) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
#else
    for (std::int64_t i = 0; i < count; ++i) {
        fn(i);
    }
#endif
}

// Convenience overload: worker count only, default chunking.
template <typename Fn>
void parallel_for(std::int64_t count, int workers, Fn&& fn) {
    parallel_for(count, ExecPlan{workers, 0}, std::forward<Fn>(fn));
}

// Number of hardware threads OpenMP would use by default (1 without OpenMP).
int hardware_workers();

} // namespace stereotk
