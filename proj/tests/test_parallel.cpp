#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "mtw/model.hpp"
#include "mtw/parallel.hpp"
#include "mtw/reference.hpp"

using namespace mtw;

TEST_CASE("thread count honours MTW_THREADS") {
    setenv("MTW_THREADS", "1", 1);
    CHECK(parallel::thread_count() == 1);
    setenv("MTW_THREADS", "garbage", 1);
    CHECK(parallel::thread_count() >= 1);
    unsetenv("MTW_THREADS");
    CHECK(parallel::thread_count() >= 1);
}

TEST_CASE("for_each_index visits every index and rethrows") {
    std::vector<int> hits(1000, 0);
    parallel::for_each_index(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    std::atomic<int> count = 0;
    CHECK_THROWS_AS(parallel::for_each_index(100,
                                             [&](std::size_t i) {
                                                 ++count;
                                                 if (i == 42) throw std::runtime_error("boom");
                                             }),
                    std::runtime_error);
    CHECK(count == 100);
}

TEST_CASE("grid kernels match their serial references bitwise") {
    const SnrDistribution dist(MtwParams{3, {0.5, 0.2}, 4, 1.5});
    std::vector<double> xs;
    for (int i = 0; i <= 300; ++i) xs.push_back(i * 0.02);
    for (auto m : {Method::series, Method::integral}) {
        CHECK(dist.pdf_grid(xs, m) == reference::pdf_grid(dist, xs, m));
        CHECK(dist.cdf_grid(xs, m) == reference::cdf_grid(dist, xs, m));
    }
    const auto g = dist.pdf_grid(xs);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(g[i] == dist.pdf(xs[i]));
}
