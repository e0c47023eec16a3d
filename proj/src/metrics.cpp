#include "mtw/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mtw/combinatorics.hpp"
#include "mtw/error.hpp"
#include "mtw/parallel.hpp"
#include "mtw/reference.hpp"
#include "mtw/specfun.hpp"

namespace mtw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kDetectionTol = 1e-12;
constexpr unsigned kMaxDetectionTerms = 1U << 16;

[[noreturn]] void invalid(const std::string& what) { throw ValidationError(ValidationCode::invalid_argument, what); }

// ln p_n(s) = ln[ (-s)^n phi^{(n)}(s) / n! ] for s < 0; the p_n sum to one.
std::vector<double> log_normalized_gmgf(const MtwParams& params, unsigned nmax, double s) {
    auto v = log_gmgf_sequence(params, nmax, s);
    const double ls = std::log(-s);
    for (unsigned n = 0; n <= nmax; ++n) v[n] += n * ls - specfun::ln_gamma(n + 1.0);
    return v;
}

// Sequence a convolved with itself `times` times, truncated to `len` entries.
std::vector<double> self_convolve(const std::vector<double>& a, unsigned times, std::size_t len) {
    std::vector<double> out = a;
    out.resize(std::min(out.size(), len));
    for (unsigned t = 1; t < times; ++t) {
        std::vector<double> next(std::min(len, out.size() + a.size() - 1), 0.0);
        for (std::size_t i = 0; i < out.size(); ++i)
            for (std::size_t j = 0; j < a.size() && i + j < next.size(); ++j) next[i + j] += out[i] * a[j];
        out = std::move(next);
    }
    return out;
}

void check_detector(const DetectorConfig& c) {
    if (c.u < 1) invalid("detector: u must be >= 1");
    if (!(c.eta > 0.0) || !std::isfinite(c.eta)) invalid("detector: eta must be > 0");
}

void check_branches(unsigned m) {
    if (m < 1) invalid("number of branches must be >= 1");
}

// sum_n w_n Q(u + n, y), with Q(a + 1, y) = Q(a, y) + t(a, y) run upward.
double poisson_tail_mix(const std::vector<double>& w, unsigned u, double y) {
    double g = specfun::reg_upper_gamma(u, y);
    double log_t = specfun::log_gamma_term(u, y);
    const double log_y = std::log(y);
    double sum = 0.0;
    for (std::size_t n = 0; n < w.size(); ++n) {
        sum += w[n] * std::min(1.0, g);
        g += std::exp(log_t);
        log_t += log_y - std::log(u + n + 1.0);
    }
    return std::clamp(sum, 0.0, 1.0);
}

double detection_from_weights(const std::vector<double>& omega, const DetectorConfig& c) {
    return poisson_tail_mix(omega, c.u, 0.5 * c.eta);
}

std::vector<double> mrc_detection_weights(const MtwParams& params, unsigned branches) {
    const auto single = detection_weights(params, kDetectionTol / branches);
    // The M-fold convolution needs about M times the single-branch support.
    const std::size_t len = single.size() * branches;
    return self_convolve(single, branches, len);
}

void check_ig(const IgParams& ig, const MtwParams& params) {
    if (ig.lambda < 2) throw DomainError("composite model: lambda must be an integer >= 2");
    if (!(ig.mean_power > 0.0) || !(ig.mean_snr_q > 0.0)) invalid("composite model: mean power and SNR must be > 0");
    validate(params);
    if (std::abs(params.mean_snr - 1.0) > 1e-12) invalid("composite model: the multipath part needs mean_snr = 1");
}

}  // namespace

double outage(const MtwParams& params, const NumericPolicy& policy, double rate, Method method) {
    if (!(rate > 0.0) || !std::isfinite(rate)) invalid("outage: rate must be > 0");
    const SnrDistribution dist(params, policy);
    return dist.cdf(std::exp2(rate) - 1.0, method);
}

double average_sir_per_branch(const InterferenceScenario& s, double mean_power) {
    return mean_power / (s.interferers * s.interferer_power);
}

double sir_outage(const InterferenceScenario& sc, const MtwParams& params, const NumericPolicy& policy) {
    validate(params);
    validate(policy);
    check_branches(sc.branches);
    if (sc.interferers < 1) invalid("sir_outage: number of interferers must be >= 1");
    if (!(sc.interferer_power > 0.0) || !(sc.threshold > 0.0)) invalid("sir_outage: P_I and beta must be > 0");
    if (sc.interferers - 1 + sc.branches > kMaxTupleOrder) {
        throw NumericError("sir_outage: L - 1 + M exceeds the tuple enumeration cap of " +
                           std::to_string(kMaxTupleOrder));
    }
    const double s = -1.0 / (sc.threshold * sc.interferer_power);
    const unsigned rmax = sc.interferers - 1;
    // (beta P_I)^{-r} phi^{(r)}(s) / r! = p_r(s)
    const auto lp = log_normalized_gmgf(params, rmax, s);
    double total = 0.0;
    for (unsigned r = 0; r <= rmax; ++r) {
        for_each_tuple(r, sc.branches, [&](std::span<const unsigned> t) {
            double e = 0.0;
            for (unsigned ri : t) e += lp[ri];
            total += std::exp(e);
        });
    }
    return std::clamp(total, 0.0, 1.0);
}

double false_alarm(const DetectorConfig& config) {
    check_detector(config);
    return specfun::reg_upper_gamma(config.u, 0.5 * config.eta);
}

std::vector<double> detection_weights(const MtwParams& params, double tol) {
    validate(params);
    for (unsigned nmax = 64; nmax <= kMaxDetectionTerms; nmax *= 2) {
        const auto lp = log_normalized_gmgf(params, nmax, -1.0);
        std::vector<double> w;
        double mass = 0.0;
        for (unsigned n = 0; n <= nmax; ++n) {
            w.push_back(std::exp(lp[n]));
            mass += w.back();
            if (1.0 - mass < tol) return w;
        }
    }
    throw NumericError("detection_prob: generalized MGF series did not reach its mass tolerance");
}

double detection_prob(const MtwParams& params, const DetectorConfig& config, const NumericPolicy& policy,
                      unsigned branches) {
    validate(policy);
    check_detector(config);
    check_branches(branches);
    return detection_from_weights(mrc_detection_weights(params, branches), config);
}

double mrc_gmgf(std::span<const MtwParams> branches, unsigned r, double s) {
    if (branches.empty()) invalid("mrc_gmgf: need at least one branch");
    if (!(s < 0.0)) throw DomainError("mrc_gmgf: s must be < 0");
    const auto m = static_cast<unsigned>(branches.size());
    if (r + m > kMaxTupleOrder) {
        throw NumericError("mrc_gmgf: r + M exceeds the tuple enumeration cap of " + std::to_string(kMaxTupleOrder));
    }
    std::vector<std::vector<double>> seq;
    for (const auto& p : branches) seq.push_back(log_gmgf_sequence(p, r, s));
    std::vector<double> terms;
    const double log_rfact = specfun::ln_gamma(r + 1.0);
    for_each_tuple(r, m, [&](std::span<const unsigned> t) {
        double e = log_rfact;
        for (unsigned i = 0; i < m; ++i) e += seq[i][t[i]] - specfun::ln_gamma(t[i] + 1.0);
        terms.push_back(e);
    });
    const double top = *std::max_element(terms.begin(), terms.end());
    double sum = 0.0;
    for (double e : terms) sum += std::exp(e - top);
    return sum * std::exp(top);
}

double auc(const MtwParams& params, unsigned u, const NumericPolicy& policy, unsigned branches) {
    validate(policy);
    check_branches(branches);
    if (u < 1) invalid("auc: u must be >= 1");
    // psi_n = phi^{(n)}(-1/2) / n! for n < u; MRC convolves the per-branch psi.
    const auto lp = log_gmgf_sequence(params, u - 1, -0.5);
    std::vector<double> psi(u);
    for (unsigned n = 0; n < u; ++n) psi[n] = std::exp(lp[n] - specfun::ln_gamma(n + 1.0));
    psi = self_convolve(psi, branches, u);
    double sum = 0.0;
    for (unsigned q = 0; q < u; ++q) {
        for (unsigned n = 0; n <= q; ++n) {
            const double lc = log_binomial(q + u - 1.0, q - n) - (n + q + u) * std::numbers::ln2;
            sum += std::exp(lc) * psi[n];
        }
    }
    return std::clamp(1.0 - sum, 0.0, 1.0);
}

std::vector<RocPoint> roc(const MtwParams& params, unsigned u, std::span<const double> etas,
                          const NumericPolicy& policy, unsigned branches) {
    validate(policy);
    check_branches(branches);
    const auto omega = mrc_detection_weights(params, branches);
    std::vector<RocPoint> out(etas.size());
    parallel::for_each_index(etas.size(), [&](std::size_t i) {
        const DetectorConfig c{u, etas[i]};
        check_detector(c);
        out[i] = {etas[i], false_alarm(c), detection_from_weights(omega, c)};
    });
    return out;
}

double ig_cdf(const IgParams& ig, const MtwParams& params, double q) {
    check_ig(ig, params);
    if (!(q > 0.0)) throw DomainError("ig_cdf: q must be > 0");
    if (std::isinf(q)) return 1.0;
    const double s = (1.0 - ig.lambda) * ig.mean_power / q;
    const auto lp = log_normalized_gmgf(params, ig.lambda - 1, s);
    double sum = 0.0;
    for (double e : lp) sum += std::exp(e);
    return std::clamp(sum, 0.0, 1.0);
}

double ig_pdf(const IgParams& ig, const MtwParams& params, double q) {
    check_ig(ig, params);
    if (!(q > 0.0)) throw DomainError("ig_pdf: q must be > 0");
    if (std::isinf(q)) return 0.0;
    const double s = (1.0 - ig.lambda) * ig.mean_power / q;
    // Qbar^l (l-1)^l / (q^{l+1} Gamma(l)) phi^{(l)}(s) = l p_l(s) / q
    const auto lp = log_normalized_gmgf(params, ig.lambda, s);
    return std::exp(std::log(static_cast<double>(ig.lambda)) + lp[ig.lambda] - std::log(q));
}

double ig_outage(const IgParams& ig, const MtwParams& params, double gamma_th) {
    if (!(gamma_th > 0.0)) throw DomainError("ig_outage: threshold must be > 0");
    return ig_cdf(ig, params, ig.mean_power * gamma_th / ig.mean_snr_q);
}

namespace reference {

std::vector<RocPoint> roc(const MtwParams& params, unsigned u, std::span<const double> etas,
                          const NumericPolicy& policy, unsigned branches) {
    validate(policy);
    check_branches(branches);
    const auto omega = mrc_detection_weights(params, branches);
    std::vector<RocPoint> out(etas.size());
    for (std::size_t i = 0; i < etas.size(); ++i) {
        const DetectorConfig c{u, etas[i]};
        check_detector(c);
        out[i] = {etas[i], false_alarm(c), detection_from_weights(omega, c)};
    }
    return out;
}

}  // namespace reference

}  // namespace mtw
