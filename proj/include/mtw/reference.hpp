#ifndef MTW_REFERENCE_HPP
#define MTW_REFERENCE_HPP

// Serial reference versions of the OpenMP kernels. They produce bitwise the
// same results as the parallel versions and exist for tests and benchmarks.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mtw/metrics.hpp"
#include "mtw/model.hpp"
#include "mtw/sim.hpp"

namespace mtw::reference {

std::vector<double> pdf_grid(const SnrDistribution& dist, std::span<const double> xs, Method method);
std::vector<double> cdf_grid(const SnrDistribution& dist, std::span<const double> xs, Method method);

EnvelopeSamples sample_snr(const PhysicalConfig& config, std::size_t n, std::uint64_t seed);

double ks_distance(const EnvelopeSamples& samples, const std::function<double(double)>& cdf);

std::vector<RocPoint> roc(const MtwParams& params, unsigned u, std::span<const double> etas,
                          const NumericPolicy& policy, unsigned branches = 1);

}  // namespace mtw::reference

#endif  // MTW_REFERENCE_HPP
