#include "mtw/parallel.hpp"

#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace mtw::parallel {

int thread_count() {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("MTW_THREADS")) {
        int cap = 0;
        const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), cap);
        if (ec == std::errc() && *ptr == '\0' && cap > 0 && cap < n) n = cap;
    }
    return n < 1 ? 1 : n;
}

}  // namespace mtw::parallel
