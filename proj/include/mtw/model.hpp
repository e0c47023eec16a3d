#ifndef MTW_MODEL_HPP
#define MTW_MODEL_HPP

// Distribution of the received SNR under the multi-cluster two-wave model:
// PDF/CDF as angular integrals or as Gamma mixtures, and the Laplace-domain
// statistics derived from the generalized MGF.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mtw/params.hpp"
#include "mtw/quadrature.hpp"

namespace mtw {

/// Gamma-mixture representation f(x) = sum_k w_k Gamma(x; mu + k, beta).
///
/// The classical coefficient X(k) is w_k beta^{mu+k} / Gamma(mu + k); both
/// views are stored in log form.
struct SeriesCoeffs {
    MtwParams params;
    double beta = 0.0;
    std::vector<double> log_weights;  ///< ln |w_k|
    std::vector<int> signs;           ///< sign of w_k; always +1 on the stable route
    std::vector<double> weights;      ///< w_k
    std::vector<double> log_shift;    ///< ln(mu + k), cached for the recurrences
    double tail_mass = 0.0;           ///< 1 - sum_k w_k at truncation
    bool cap_hit = false;             ///< series_kmax reached before series_rel_tol

    std::size_t size() const { return weights.size(); }
    /// ln |X(k)|
    double log_coeff(std::size_t k) const;
    /// X(k)
    double coeff(std::size_t k) const;
    /// sum_k X(k) beta^{-mu-k} Gamma(mu + k) = sum_k w_k
    double total_mass() const;
};

/// Mixture weights from the positive split of the angular averages, extended
/// term by term until the remaining mass drops below policy.series_rel_tol
/// or policy.series_kmax terms are reached (cap_hit).
SeriesCoeffs series_coeffs(const MtwParams& params, const NumericPolicy& policy);

/// Exactly `terms` coefficients through the expanded Bessel form (tuples of
/// I_{2l - r_i}(-mu K Delta_i)). Accurate while mu K sum Delta is moderate;
/// kept as an independent cross-check of series_coeffs.
SeriesCoeffs series_coeffs_expanded(const MtwParams& params, std::size_t terms);

double pdf_series(const SeriesCoeffs& coeffs, double x);
double cdf_series(const SeriesCoeffs& coeffs, double x);

/// Tensor Gauss-Legendre evaluation of the angular integral. Clusters with
/// Delta_i = 0 add no dimension. More than policy.max_integral_dim remaining
/// dimensions raise DomainError.
double pdf_integral(const MtwParams& params, const NumericPolicy& policy, double x);
double cdf_integral(const MtwParams& params, const NumericPolicy& policy, double x);

/// ln phi^{(n)}(s) = ln E[gamma^n e^{s gamma}] for n = 0..nmax.
/// Throws NumericError when s is within a relative 1e-10 of the pole
/// mu (1 + K) / mean_snr or beyond it.
std::vector<double> log_gmgf_sequence(const MtwParams& params, unsigned nmax, double s);
double gmgf(const MtwParams& params, unsigned n, double s);

/// The generalized MGF through the expanded Bessel sum with sign/log
/// compensated summation. Cross-check only.
double gmgf_expanded(const MtwParams& params, unsigned n, double s);

double mgf(const MtwParams& params, double s);
double log_mgf(const MtwParams& params, double s);

/// Non-central moment E[gamma^n] from the even-index Bessel expansion at s = 0.
double moment(const MtwParams& params, unsigned n);

/// Amount of fading Var[gamma] / E[gamma]^2.
double aof(const MtwParams& params);

/// Leading small-x term of the CDF; its log-log slope is mu.
double asymptotic_cdf(const MtwParams& params, double x);

/// Parameters plus policy with the series coefficients built once.
/// Immutable after construction; safe to share across threads.
class SnrDistribution {
public:
    SnrDistribution(MtwParams params, NumericPolicy policy = {});

    const MtwParams& params() const { return params_; }
    const NumericPolicy& policy() const { return policy_; }
    const SeriesCoeffs& coeffs() const { return coeffs_; }

    /// Number of angular dimensions left after dropping Delta_i = 0.
    std::size_t integral_dim() const { return active_deltas_.size(); }
    bool integral_available() const { return integral_dim() <= policy_.max_integral_dim; }

    /// The route `automatic` resolves to: the series unless its cap was hit
    /// and the integral is available.
    Method resolve(Method method) const;

    double pdf(double x, Method method = Method::automatic) const;
    double cdf(double x, Method method = Method::automatic) const;
    double gmgf(unsigned n, double s) const { return mtw::gmgf(params_, n, s); }
    double mgf(double s) const { return mtw::mgf(params_, s); }

    double pdf_integral(double x) const;
    double cdf_integral(double x) const;

    /// Grid evaluation, parallel over points (MTW_THREADS caps the team).
    std::vector<double> pdf_grid(std::span<const double> xs, Method method = Method::automatic) const;
    std::vector<double> cdf_grid(std::span<const double> xs, Method method = Method::automatic) const;

private:
    MtwParams params_;
    NumericPolicy policy_;
    SeriesCoeffs coeffs_;
    std::vector<double> active_deltas_;
    GaussLegendreRule angle_rule_;  // cos(theta) nodes and weights summing to 1
};

}  // namespace mtw

#endif  // MTW_MODEL_HPP
