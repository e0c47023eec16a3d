#ifndef MTW_PARALLEL_HPP
#define MTW_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <mutex>

namespace mtw::parallel {

/// OpenMP team size: omp_get_max_threads(), capped by MTW_THREADS when that
/// variable holds a positive integer.
int thread_count();

/// Runs body(i) for i in [0, n) across the OpenMP team. The first exception
/// thrown by any iteration is rethrown after the loop.
template <class Body>
void for_each_index(std::size_t n, Body&& body, bool dynamic = true) {
    std::exception_ptr error;
    std::mutex guard;
    const long long count = static_cast<long long>(n);
    const int threads = thread_count();
    if (dynamic) {
#pragma omp parallel for num_threads(threads) schedule(dynamic, 16)
        for (long long i = 0; i < count; ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
                std::lock_guard lock(guard);
                if (!error) error = std::current_exception();
            }
        }
    } else {
#pragma omp parallel for num_threads(threads) schedule(static)
        for (long long i = 0; i < count; ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
                std::lock_guard lock(guard);
                if (!error) error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace mtw::parallel

#endif  // MTW_PARALLEL_HPP
