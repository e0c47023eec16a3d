#ifndef MTW_FIT_HPP
#define MTW_FIT_HPP

// Least-squares fit of (K, Delta, mu) to an envelope histogram. Samples are
// normalized to unit mean power, so the mean SNR is fixed at 1.

#include <cstddef>
#include <span>
#include <vector>

#include "mtw/model.hpp"
#include "mtw/nelder_mead.hpp"
#include "mtw/params.hpp"
#include "mtw/sim.hpp"

namespace mtw {

struct EmpiricalPdf {
    std::vector<double> bin_centers;
    std::vector<double> densities;
    double bin_width = 0.0;
    std::size_t sample_count = 0;
};

struct FitReport {
    MtwParams params;
    double mse = 0.0;
    std::size_t iterations = 0;   ///< simplex iterations of the winning start
    std::size_t evaluations = 0;  ///< objective calls over all starts
    bool converged = false;
    std::vector<double> objective_trace;  ///< best value per iteration, winning start
    std::vector<double> start_mse;        ///< objective at each initial point
    std::size_t best_start = 0;
};

/// Freedman-Diaconis bin count 2 IQR n^{-1/3}, clamped to [20, 200].
std::size_t freedman_diaconis_bins(std::span<const double> values);

/// Density histogram over [min, max]; bins = 0 picks the Freedman-Diaconis count.
/// Needs at least 100 samples.
EmpiricalPdf empirical_pdf(const EnvelopeSamples& samples, std::size_t bins = 0);

/// Envelope density 2 r f_gamma(r^2) from the series form.
double envelope_pdf(const SnrDistribution& dist, double r);

/// (1/T) sum_i (hist_i - 2 r_i f_gamma(r_i^2))^2 over the T bin centers.
double mse_objective(const EmpiricalPdf& hist, const MtwParams& params, const NumericPolicy& policy);

/// Unconstrained coordinates (ln K, ln mu, z_1..z_N) with
/// Delta_i = e^{z_i} / (1 + sum_j e^{z_j}); mean SNR fixed at 1.
MtwParams params_from_coordinates(std::span<const double> theta, unsigned n_two_spec);
std::vector<double> coordinates_from_params(const MtwParams& params);

/// Deterministic start `index` (0-based) from a Halton sequence over
/// ln K in [ln 0.1, ln 30], ln mu in [ln 0.5, ln 15], z in [-2, 2].
std::vector<double> halton_start(unsigned index, unsigned n_two_spec);

/// Multi-start Nelder-Mead; the winner is the lowest mse, ties broken by start index.
FitReport fit(const EmpiricalPdf& hist, unsigned n_two_spec, unsigned restarts, const NumericPolicy& policy,
              const NelderMeadOptions& options = {});

}  // namespace mtw

#endif  // MTW_FIT_HPP
