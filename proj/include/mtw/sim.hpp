#ifndef MTW_SIM_HPP
#define MTW_SIM_HPP

// Monte Carlo sampler of the physical model: mu clusters, each the sum of up
// to two constant-amplitude waves with independent uniform phases plus a
// complex Gaussian diffuse part.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mtw/params.hpp"

namespace mtw {

struct PhysicalConfig {
    unsigned mu_int = 1;
    std::vector<std::array<double, 2>> specular_amplitudes;  ///< (V_{i,1}, V_{i,2}) per cluster
    double sigma2 = 0.5;                                     ///< per-quadrature diffuse variance
    double es_n0 = 1.0;

    /// K = sum V^2 / (2 sigma^2 mu)
    double derived_K() const;
    /// Delta_i = 2 V_{i,1} V_{i,2} / sum V^2 for the clusters carrying two waves
    std::vector<double> derived_deltas() const;
};

enum class SampleKind { envelope, snr, power };

std::string to_string(SampleKind kind);
SampleKind parse_sample_kind(const std::string& name);

struct EnvelopeSamples {
    std::vector<double> values;
    std::size_t count = 0;
    std::uint64_t seed = 0;
    SampleKind kind = SampleKind::snr;
    double normalization_scale = 1.0;  ///< raw values were divided by this
};

/// Splits the specular power P = 2 sigma^2 mu K over the N two-wave clusters:
/// cluster i carries p_i = Delta_i P + P (1 - sum Delta) / N, shared between
/// its two waves as the roots of t^2 - p_i t + (Delta_i P / 2)^2. With N = 0
/// the whole specular power is one wave in the first cluster.
/// Requires integer mu >= N; E_s/N_0 is set so the mean SNR matches.
PhysicalConfig amplitudes_from_params(const MtwParams& params, double sigma2 = 0.5);

/// Samples per independently seeded generator block.
inline constexpr std::size_t kSampleBlock = 1U << 15;

/// n SNR draws gamma = W E_s/N_0, W = sum_i |Z_i|^2. Block b draws from a
/// 64-bit Mersenne Twister seeded with splitmix64(seed + b), so the result
/// does not depend on the thread count.
EnvelopeSamples sample_snr(const PhysicalConfig& config, std::size_t n, std::uint64_t seed);

/// sqrt of each SNR sample (an envelope with unit mean power when the mean SNR is 1).
EnvelopeSamples snr_to_envelope(const EnvelopeSamples& samples);

/// sup |F_emp - F| over the sorted sample points.
double ks_distance(const EnvelopeSamples& samples, const std::function<double(double)>& cdf);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace mtw

#endif  // MTW_SIM_HPP
