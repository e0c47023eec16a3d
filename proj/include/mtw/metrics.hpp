#ifndef MTW_METRICS_HPP
#define MTW_METRICS_HPP

// Link-level metrics built on the generalized MGF: outage (noise- and
// interference-limited), energy detection with optional MRC, and the
// composite Inverse-Gamma shadowed model.

#include <span>
#include <vector>

#include "mtw/model.hpp"
#include "mtw/params.hpp"

namespace mtw {

struct DetectorConfig {
    unsigned u = 1;    ///< time-bandwidth product
    double eta = 1.0;  ///< energy threshold
};

struct InterferenceScenario {
    unsigned branches = 1;      ///< M
    unsigned interferers = 1;   ///< L
    double interferer_power = 1.0;  ///< P_I
    double threshold = 1.0;     ///< beta
};

struct IgParams {
    unsigned lambda = 2;
    double mean_power = 1.0;  ///< Q bar
    double mean_snr_q = 1.0;  ///< mean SNR of the shadowed link
};

struct RocPoint {
    double eta = 0.0;
    double pf = 0.0;
    double pd = 0.0;
};

/// Largest r + M accepted by the tuple enumerations in mrc_gmgf and sir_outage.
inline constexpr unsigned kMaxTupleOrder = 40;

/// P(log2(1 + gamma) < rate).
double outage(const MtwParams& params, const NumericPolicy& policy, double rate, Method method = Method::automatic);

/// P(sum of M branch SNRs < beta * sum of L exponential interferer powers).
/// The branch parameters' mean_snr is the average desired power per antenna.
double sir_outage(const InterferenceScenario& scenario, const MtwParams& params, const NumericPolicy& policy);

/// Mean SINR-style abscissa: per-branch average power over total interference.
double average_sir_per_branch(const InterferenceScenario& scenario, double mean_power);

double false_alarm(const DetectorConfig& config);

/// Average detection probability with MRC over `branches` i.i.d. branches.
/// Written as sum_n omega_n Q(u + n, eta/2), omega_n = E[e^{-gamma} gamma^n / n!]
/// (the generalized MGF at s = -1 over n!); the n-sum stops once the
/// remaining omega mass is below 1e-12.
double detection_prob(const MtwParams& params, const DetectorConfig& config, const NumericPolicy& policy,
                      unsigned branches = 1);

/// sum_{tau(r,M)} r!/(r_1!...r_M!) prod_i phi_i^{(r_i)}(s) for independent branches.
double mrc_gmgf(std::span<const MtwParams> branches, unsigned r, double s);

/// Area under the ROC curve; branches > 1 combines i.i.d. branches by MRC.
double auc(const MtwParams& params, unsigned u, const NumericPolicy& policy, unsigned branches = 1);

/// (P_f, P_d) for each threshold; parallel over thresholds.
std::vector<RocPoint> roc(const MtwParams& params, unsigned u, std::span<const double> etas,
                          const NumericPolicy& policy, unsigned branches = 1);

/// Composite IG/MTW received power. `params` must have mean_snr = 1.
double ig_pdf(const IgParams& ig, const MtwParams& params, double q);
double ig_cdf(const IgParams& ig, const MtwParams& params, double q);
double ig_outage(const IgParams& ig, const MtwParams& params, double gamma_th);

/// omega_n for n = 0.. until 1 - sum omega < tol (single branch).
std::vector<double> detection_weights(const MtwParams& params, double tol = 1e-13);

}  // namespace mtw

#endif  // MTW_METRICS_HPP
