#include "mtw/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mtw/error.hpp"
#include "mtw/parallel.hpp"
#include "mtw/reference.hpp"

namespace mtw {

namespace {

// Fills out[0..count) with SNR draws from one generator.
void fill_block(const PhysicalConfig& c, std::uint64_t block_seed, double* out, std::size_t count) {
    std::mt19937_64 gen(block_seed);
    std::normal_distribution<double> diffuse(0.0, std::sqrt(c.sigma2));
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    for (std::size_t j = 0; j < count; ++j) {
        double w = 0.0;
        for (unsigned i = 0; i < c.mu_int; ++i) {
            double re = diffuse(gen);
            double im = diffuse(gen);
            for (double v : c.specular_amplitudes[i]) {
                if (v == 0.0) continue;
                const double p = phase(gen);
                re += v * std::cos(p);
                im += v * std::sin(p);
            }
            w += re * re + im * im;
        }
        out[j] = w * c.es_n0;
    }
}

std::uint64_t block_seed(std::uint64_t seed, std::size_t block) { return splitmix64(seed + block); }

void check_config(const PhysicalConfig& c, std::size_t n) {
    if (n == 0) throw ValidationError(ValidationCode::invalid_argument, "sample count must be >= 1");
    if (c.mu_int == 0 || c.specular_amplitudes.size() != c.mu_int) {
        throw ValidationError(ValidationCode::invalid_argument, "physical config needs one amplitude pair per cluster");
    }
    if (!(c.sigma2 > 0.0) || !(c.es_n0 > 0.0)) {
        throw ValidationError(ValidationCode::invalid_argument, "sigma2 and es_n0 must be > 0");
    }
}

std::vector<double> sorted_copy(const EnvelopeSamples& s) {
    if (s.values.empty()) throw ValidationError(ValidationCode::invalid_argument, "ks_distance: no samples");
    std::vector<double> v = s.values;
    std::sort(v.begin(), v.end());
    return v;
}

double ks_from_sorted(const std::vector<double>& x, const std::vector<double>& f) {
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        d = std::max(d, std::max(f[i] - i / n, (i + 1) / n - f[i]));
    }
    return d;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double PhysicalConfig::derived_K() const {
    double p = 0.0;
    for (const auto& v : specular_amplitudes) p += v[0] * v[0] + v[1] * v[1];
    return p / (2.0 * sigma2 * mu_int);
}

std::vector<double> PhysicalConfig::derived_deltas() const {
    double p = 0.0;
    for (const auto& v : specular_amplitudes) p += v[0] * v[0] + v[1] * v[1];
    std::vector<double> out;
    for (const auto& v : specular_amplitudes) {
        if (v[1] > 0.0) out.push_back(p > 0.0 ? 2.0 * v[0] * v[1] / p : 0.0);
    }
    return out;
}

std::string to_string(SampleKind kind) {
    switch (kind) {
        case SampleKind::envelope: return "envelope";
        case SampleKind::snr: return "snr";
        case SampleKind::power: return "power";
    }
    return "snr";
}

SampleKind parse_sample_kind(const std::string& name) {
    if (name == "envelope") return SampleKind::envelope;
    if (name == "snr") return SampleKind::snr;
    if (name == "power") return SampleKind::power;
    throw ValidationError(ValidationCode::invalid_argument, "unknown sample kind '" + name + "'");
}

PhysicalConfig amplitudes_from_params(const MtwParams& params, double sigma2) {
    validate(params);
    if (!(sigma2 > 0.0)) throw ValidationError(ValidationCode::invalid_argument, "sigma2 must be > 0");
    if (params.mu != std::floor(params.mu)) {
        throw ValidationError(ValidationCode::invalid_argument, "simulation requires an integer mu");
    }
    const auto mu = static_cast<unsigned>(params.mu);
    const std::size_t n = params.deltas.size();
    if (n > mu) {
        throw ValidationError(ValidationCode::invalid_argument,
                              "simulation requires at most mu clusters with two specular waves");
    }
    PhysicalConfig c;
    c.mu_int = mu;
    c.sigma2 = sigma2;
    c.es_n0 = params.mean_snr / (2.0 * sigma2 * params.mu * (1.0 + params.K));
    c.specular_amplitudes.assign(mu, {0.0, 0.0});
    const double power = 2.0 * sigma2 * params.mu * params.K;
    if (power == 0.0) return c;
    if (n == 0) {
        c.specular_amplitudes[0] = {std::sqrt(power), 0.0};
        return c;
    }
    const double leftover = std::max(0.0, 1.0 - params.delta_sum()) * power / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = params.deltas[i] * power;
        const double p = d + leftover;
        const double disc = p * p - d * d;
        if (disc < 0.0) throw NumericError("amplitude split: negative discriminant");
        const double root = std::sqrt(disc);
        const double v1sq = 0.5 * (p + root);
        // Product of the roots is (d/2)^2; dividing avoids cancellation in p - root.
        const double v2sq = v1sq > 0.0 ? 0.25 * d * d / v1sq : 0.0;
        c.specular_amplitudes[i] = {std::sqrt(v1sq), std::sqrt(v2sq)};
    }
    return c;
}

EnvelopeSamples sample_snr(const PhysicalConfig& config, std::size_t n, std::uint64_t seed) {
    check_config(config, n);
    EnvelopeSamples s;
    s.values.resize(n);
    s.count = n;
    s.seed = seed;
    s.kind = SampleKind::snr;
    const std::size_t blocks = (n + kSampleBlock - 1) / kSampleBlock;
    parallel::for_each_index(
        blocks,
        [&](std::size_t b) {
            const std::size_t begin = b * kSampleBlock;
            fill_block(config, block_seed(seed, b), s.values.data() + begin, std::min(kSampleBlock, n - begin));
        },
        false);
    return s;
}

EnvelopeSamples snr_to_envelope(const EnvelopeSamples& samples) {
    EnvelopeSamples out = samples;
    for (double& v : out.values) v = std::sqrt(v);
    out.kind = SampleKind::envelope;
    return out;
}

double ks_distance(const EnvelopeSamples& samples, const std::function<double(double)>& cdf) {
    const auto x = sorted_copy(samples);
    std::vector<double> f(x.size());
    parallel::for_each_index(x.size(), [&](std::size_t i) { f[i] = cdf(x[i]); }, false);
    return ks_from_sorted(x, f);
}

namespace reference {

EnvelopeSamples sample_snr(const PhysicalConfig& config, std::size_t n, std::uint64_t seed) {
    check_config(config, n);
    EnvelopeSamples s;
    s.values.resize(n);
    s.count = n;
    s.seed = seed;
    s.kind = SampleKind::snr;
    for (std::size_t b = 0, begin = 0; begin < n; ++b, begin += kSampleBlock) {
        fill_block(config, block_seed(seed, b), s.values.data() + begin, std::min(kSampleBlock, n - begin));
    }
    return s;
}

double ks_distance(const EnvelopeSamples& samples, const std::function<double(double)>& cdf) {
    const auto x = sorted_copy(samples);
    std::vector<double> f(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) f[i] = cdf(x[i]);
    return ks_from_sorted(x, f);
}

}  // namespace reference

}  // namespace mtw
