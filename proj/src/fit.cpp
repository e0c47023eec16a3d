#include "mtw/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mtw/error.hpp"
#include "mtw/model.hpp"
#include "mtw/parallel.hpp"

namespace mtw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Beyond these the mixture needs more terms than series_kmax allows and the
// search is far from any sensible channel anyway.
constexpr double kMaxK = 1e4;
constexpr double kMaxMu = 1e3;

double quantile(const std::vector<double>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double radical_inverse(unsigned index, unsigned base) {
    double f = 1.0;
    double r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

}  // namespace

std::size_t freedman_diaconis_bins(std::span<const double> values) {
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const double iqr = quantile(v, 0.75) - quantile(v, 0.25);
    const double range = v.back() - v.front();
    if (!(iqr > 0.0) || !(range > 0.0)) return 20;
    const double h = 2.0 * iqr / std::cbrt(static_cast<double>(v.size()));
    const double bins = std::ceil(range / h);
    return static_cast<std::size_t>(std::clamp(bins, 20.0, 200.0));
}

EmpiricalPdf empirical_pdf(const EnvelopeSamples& samples, std::size_t bins) {
    const auto& v = samples.values;
    if (v.size() < 100) {
        throw ValidationError(ValidationCode::invalid_argument, "empirical_pdf: need at least 100 samples");
    }
    if (bins == 0) bins = freedman_diaconis_bins(v);
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    const double lo = *mn;
    double hi = *mx;
    if (!(hi > lo)) hi = lo + 1.0;
    EmpiricalPdf h;
    h.bin_width = (hi - lo) / static_cast<double>(bins);
    h.sample_count = v.size();
    std::vector<std::size_t> counts(bins, 0);
    for (double x : v) {
        auto b = static_cast<std::size_t>((x - lo) / h.bin_width);
        ++counts[std::min(b, bins - 1)];
    }
    const double norm = 1.0 / (static_cast<double>(v.size()) * h.bin_width);
    for (std::size_t b = 0; b < bins; ++b) {
        h.bin_centers.push_back(lo + (static_cast<double>(b) + 0.5) * h.bin_width);
        h.densities.push_back(static_cast<double>(counts[b]) * norm);
    }
    return h;
}

double envelope_pdf(const SnrDistribution& dist, double r) {
    if (r == 0.0) {
        // 2 r f(r^2) -> 0 for mu > 1/2
        return 2.0 * r * dist.pdf(0.0, Method::series);
    }
    return 2.0 * r * dist.pdf(r * r, Method::series);
}

double mse_objective(const EmpiricalPdf& hist, const MtwParams& params, const NumericPolicy& policy) {
    if (hist.bin_centers.empty()) throw ValidationError(ValidationCode::invalid_argument, "mse_objective: empty histogram");
    const SnrDistribution dist(params, policy);
    double s = 0.0;
    for (std::size_t i = 0; i < hist.bin_centers.size(); ++i) {
        const double r = hist.bin_centers[i];
        const double e = hist.densities[i] - (r > 0.0 ? envelope_pdf(dist, r) : 0.0);
        s += e * e;
    }
    return s / static_cast<double>(hist.bin_centers.size());
}

MtwParams params_from_coordinates(std::span<const double> theta, unsigned n) {
    MtwParams p;
    p.K = std::exp(theta[0]);
    p.mu = std::exp(theta[1]);
    p.mean_snr = 1.0;
    // Softmax with an implicit zero coordinate for the slack 1 - sum Delta.
    double m = 0.0;
    for (unsigned i = 0; i < n; ++i) m = std::max(m, theta[2 + i]);
    double denom = std::exp(-m);
    for (unsigned i = 0; i < n; ++i) denom += std::exp(theta[2 + i] - m);
    for (unsigned i = 0; i < n; ++i) p.deltas.push_back(std::exp(theta[2 + i] - m) / denom);
    return p;
}

std::vector<double> coordinates_from_params(const MtwParams& p) {
    std::vector<double> t{std::log(p.K), std::log(p.mu)};
    const double slack = 1.0 - p.delta_sum();
    for (double d : p.deltas) t.push_back(std::log(d) - std::log(slack));
    return t;
}

std::vector<double> halton_start(unsigned index, unsigned n) {
    static constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11};
    std::vector<double> t(2 + n);
    auto u = [&](unsigned dim) { return radical_inverse(index + 1, kPrimes[dim]); };
    t[0] = std::log(0.1) + u(0) * (std::log(30.0) - std::log(0.1));
    t[1] = std::log(0.5) + u(1) * (std::log(15.0) - std::log(0.5));
    for (unsigned i = 0; i < n; ++i) t[2 + i] = -2.0 + 4.0 * u(2 + i);
    return t;
}

FitReport fit(const EmpiricalPdf& hist, unsigned n, unsigned restarts, const NumericPolicy& policy,
              const NelderMeadOptions& options) {
    if (n > 3) throw ValidationError(ValidationCode::invalid_argument, "fit: n_two_spec must be 0..3");
    if (restarts < 1) throw ValidationError(ValidationCode::invalid_argument, "fit: restarts must be >= 1");
    validate(policy);

    auto objective = [&](std::span<const double> theta) {
        const MtwParams p = params_from_coordinates(theta, n);
        if (!(p.K <= kMaxK) || !(p.mu <= kMaxMu) || !(p.mu > 0.0)) return kInf;
        try {
            return mse_objective(hist, p, policy);
        } catch (const NumericError&) {
            return kInf;
        } catch (const ValidationError&) {
            return kInf;
        }
    };

    std::vector<NelderMeadResult> runs(restarts);
    std::vector<double> start_mse(restarts);
    parallel::for_each_index(restarts, [&](std::size_t i) {
        const auto x0 = halton_start(static_cast<unsigned>(i), n);
        start_mse[i] = objective(x0);
        runs[i] = nelder_mead(objective, x0, options);
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < runs.size(); ++i)
        if (runs[i].fx < runs[best].fx) best = i;

    FitReport r;
    r.params = params_from_coordinates(runs[best].x, n);
    r.mse = runs[best].fx;
    r.iterations = runs[best].iterations;
    r.converged = runs[best].converged;
    r.objective_trace = runs[best].trace;
    r.start_mse = start_mse;
    r.best_start = best;
    for (const auto& run : runs) r.evaluations += run.evaluations;
    return r;
}

}  // namespace mtw
