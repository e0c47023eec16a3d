#include <doctest.h>

#include <cmath>
#include <random>

#include "mtw/error.hpp"
#include "mtw/fit.hpp"
#include "mtw/nelder_mead.hpp"
#include "mtw/sim.hpp"

using namespace mtw;

namespace {

MtwParams make(double K, std::vector<double> deltas, double mu, double gbar = 1.0) {
    return MtwParams{K, std::move(deltas), mu, gbar};
}

EnvelopeSamples synthetic_envelope(const MtwParams& p, std::size_t n, std::uint64_t seed) {
    return snr_to_envelope(sample_snr(amplitudes_from_params(p), n, seed));
}

const NumericPolicy kPolicy;

}  // namespace

TEST_CASE("nelder-mead on quadratic and Rosenbrock") {
    auto quad = [](std::span<const double> x) { return (x[0] - 1) * (x[0] - 1) + 4 * (x[1] + 2) * (x[1] + 2); };
    const auto q = nelder_mead(quad, {5.0, 5.0});
    CHECK(q.converged);
    CHECK(q.x[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(q.x[1] == doctest::Approx(-2.0).epsilon(1e-5));
    for (std::size_t i = 1; i < q.trace.size(); ++i) CHECK(q.trace[i] <= q.trace[i - 1]);

    auto rosen = [](std::span<const double> x) {
        return 100 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]) + (1 - x[0]) * (1 - x[0]);
    };
    NelderMeadOptions opt;
    opt.max_evaluations = 5000;
    opt.diameter_tol = 1e-9;
    const auto r = nelder_mead(rosen, {-1.2, 1.0}, opt);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-4));

    NelderMeadOptions few;
    few.max_evaluations = 10;
    const auto f = nelder_mead(rosen, {-1.2, 1.0}, few);
    CHECK_FALSE(f.converged);
    CHECK(f.evaluations <= 10);

    auto walled = [](std::span<const double> x) { return x[0] < 0 ? NAN : (x[0] - 0.5) * (x[0] - 0.5); };
    const auto w = nelder_mead(walled, {2.0});
    CHECK(w.x[0] == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("coordinates") {
    const auto p = make(5, {0.5}, 3);
    const auto t = coordinates_from_params(p);
    const auto back = params_from_coordinates(t, 1);
    CHECK(back.K == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(back.mu == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(back.deltas[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(back.mean_snr == 1.0);
    const auto q = make(2, {0.1, 0.3, 0.2}, 1.5);
    const auto qb = params_from_coordinates(coordinates_from_params(q), 3);
    for (int i = 0; i < 3; ++i) CHECK(qb.deltas[i] == doctest::Approx(q.deltas[i]).epsilon(1e-13));
    // any point maps inside the feasible set
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-30, 30);
    for (int i = 0; i < 1000; ++i) {
        const std::vector<double> th{u(rng) / 5, u(rng) / 10, u(rng), u(rng), u(rng)};
        const auto m = params_from_coordinates(th, 3);
        CHECK_NOTHROW(validate(m));
    }
    const auto h0 = halton_start(0, 1);
    CHECK(h0.size() == 3);
    CHECK(halton_start(3, 2) == halton_start(3, 2));
    CHECK(h0 != halton_start(1, 1));
    for (unsigned i = 0; i < 16; ++i) {
        const auto h = halton_start(i, 1);
        CHECK(h[0] >= std::log(0.1));
        CHECK(h[0] <= std::log(30.0));
        CHECK(h[2] >= -2.0);
        CHECK(h[2] <= 2.0);
    }
}

TEST_CASE("empirical pdf") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    EnvelopeSamples s;
    for (int i = 0; i < 1000000; ++i) s.values.push_back(u(rng));
    s.count = s.values.size();
    const auto h = empirical_pdf(s);
    CHECK(h.densities.size() >= 20);
    CHECK(h.densities.size() <= 200);
    double mass = 0.0;
    for (double d : h.densities) mass += d * h.bin_width;
    CHECK(std::abs(mass - 1.0) < 1e-12);
    for (std::size_t i = 1; i + 1 < h.densities.size(); ++i) CHECK(std::abs(h.densities[i] - 1.0) < 0.05);
    for (std::size_t i = 1; i < h.bin_centers.size(); ++i) CHECK(h.bin_centers[i] > h.bin_centers[i - 1]);

    EnvelopeSamples few;
    few.values.assign(99, 1.0);
    CHECK_THROWS_AS(empirical_pdf(few), ValidationError);
    CHECK(empirical_pdf(s, 37).densities.size() == 37);
}

TEST_CASE("freedman-diaconis clamp") {
    std::vector<double> tiny(200);
    for (std::size_t i = 0; i < tiny.size(); ++i) tiny[i] = double(i);
    CHECK(freedman_diaconis_bins(tiny) == 20);
    std::vector<double> heavy;
    for (int i = 0; i < 100000; ++i) heavy.push_back(i < 99990 ? (i % 100) * 1e-3 : 1e6);
    CHECK(freedman_diaconis_bins(heavy) == 200);
}

TEST_CASE("histogram of simulated envelopes matches the envelope density") {
    const auto p = make(1, {0.8}, 2);
    const std::size_t n = 1000000;
    const auto h = empirical_pdf(synthetic_envelope(p, n, 3));
    const SnrDistribution dist(p, kPolicy);
    for (std::size_t i = 0; i < h.bin_centers.size(); ++i) {
        const double r = h.bin_centers[i];
        const double lo = r - h.bin_width / 2;
        const double hi = r + h.bin_width / 2;
        // exact bin probability from the CDF, then binomial noise
        const double prob = dist.cdf(hi * hi) - dist.cdf(lo * lo);
        const double want = prob / h.bin_width;
        const double noise = std::sqrt(prob * (1 - prob) / n) / h.bin_width;
        CHECK(std::abs(h.densities[i] - want) <= 3 * noise + 1e-12);
        // and the midpoint density is close to the bin average
        CHECK(std::abs(envelope_pdf(dist, r) - want) < 0.02);
    }
}

TEST_CASE("mse objective") {
    const auto p = make(5, {0.5}, 3);
    const SnrDistribution dist(p, kPolicy);
    auto curve = [&](std::size_t bins) {
        EmpiricalPdf h;
        h.bin_width = 2.5 / bins;
        for (std::size_t i = 0; i < bins; ++i) {
            const double lo = i * h.bin_width;
            const double hi = lo + h.bin_width;
            h.bin_centers.push_back(lo + h.bin_width / 2);
            h.densities.push_back((dist.cdf(hi * hi) - dist.cdf(lo * lo)) / h.bin_width);
        }
        return h;
    };
    const double m50 = mse_objective(curve(50), p, kPolicy);
    const double m400 = mse_objective(curve(400), p, kPolicy);
    CHECK(m400 < m50);
    CHECK(m400 < 1e-6);

    const auto h = empirical_pdf(synthetic_envelope(p, 300000, 4));
    auto bumped = p;
    bumped.K *= 1.1;
    CHECK(mse_objective(h, bumped, kPolicy) > mse_objective(h, p, kPolicy));
    EmpiricalPdf empty;
    CHECK_THROWS_AS(mse_objective(empty, p, kPolicy), ValidationError);
}

TEST_CASE("fit recovers synthetic parameters") {
    const auto truth = make(5, {0.5}, 3);
    const auto h = empirical_pdf(synthetic_envelope(truth, 1000000, 5));
    const auto r = fit(h, 1, 8, kPolicy);
    CHECK(std::abs(r.params.K / 5.0 - 1.0) < 0.1);
    CHECK(std::abs(r.params.mu / 3.0 - 1.0) < 0.1);
    CHECK(std::abs(r.params.deltas[0] - 0.5) < 0.1);
    CHECK(r.mse <= mse_objective(h, truth, kPolicy) + 1e-5);
    CHECK(std::abs(r.mse - mse_objective(h, r.params, kPolicy)) <= 1e-12);
    for (double s : r.start_mse) CHECK(r.mse <= s);
    CHECK(r.start_mse.size() == 8);
    CHECK(r.evaluations >= r.iterations);
    const auto again = fit(h, 1, 8, kPolicy);
    CHECK(again.params.K == r.params.K);
    CHECK(again.params.mu == r.params.mu);
    CHECK(again.params.deltas == r.params.deltas);
    CHECK(again.mse == r.mse);
    CHECK(again.objective_trace == r.objective_trace);
}

TEST_CASE("fit on nested models") {
    SUBCASE("kappa-mu data gives a small delta") {
        const auto h = empirical_pdf(synthetic_envelope(make(5, {}, 3), 1000000, 6));
        const auto r = fit(h, 1, 8, kPolicy);
        CHECK(r.params.deltas[0] <= 0.05);
    }
    SUBCASE("Rayleigh data") {
        const auto h = empirical_pdf(synthetic_envelope(make(0, {}, 1), 1000000, 7));
        const auto r = fit(h, 1, 8, kPolicy);
        CHECK(r.params.K <= 0.05);
        CHECK(std::abs(r.params.mu - 1.0) <= 0.05);
    }
    CHECK_THROWS_AS(fit(EmpiricalPdf{{1.0}, {1.0}, 1.0, 100}, 4, 1, kPolicy), ValidationError);
    CHECK_THROWS_AS(fit(EmpiricalPdf{{1.0}, {1.0}, 1.0, 100}, 1, 0, kPolicy), ValidationError);
}

TEST_CASE("fit on exact bin probabilities of nested models") {
    // Same corners without sampling noise: the histogram holds the exact bin masses.
    auto exact = [](const MtwParams& truth) {
        auto h = empirical_pdf(synthetic_envelope(truth, 1000000, 7));
        const SnrDistribution d(truth, kPolicy);
        for (std::size_t i = 0; i < h.bin_centers.size(); ++i) {
            const double lo = std::max(h.bin_centers[i] - h.bin_width / 2, 0.0);
            const double hi = h.bin_centers[i] + h.bin_width / 2;
            h.densities[i] = (d.cdf(hi * hi) - d.cdf(lo * lo)) / h.bin_width;
        }
        return h;
    };
    const auto km = fit(exact(make(5, {}, 3)), 1, 8, kPolicy);
    CHECK(km.params.deltas[0] <= 0.05);
    CHECK(std::abs(km.params.K / 5 - 1) < 0.02);
    const auto ray = fit(exact(make(0, {}, 1)), 1, 8, kPolicy);
    CHECK(ray.params.K <= 0.05);
    CHECK(std::abs(ray.params.mu - 1.0) <= 0.05);
}
