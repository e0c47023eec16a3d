#include <algorithm>
#include <cmath>
#include <limits>

#include "mtw/angular.hpp"
#include "mtw/error.hpp"
#include "mtw/model.hpp"
#include "mtw/specfun.hpp"

namespace mtw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

SeriesCoeffs empty_coeffs(const MtwParams& params) {
    SeriesCoeffs c;
    c.params = params;
    c.beta = params.mu * (1.0 + params.K) / params.mean_snr;
    return c;
}

void push_weight(SeriesCoeffs& c, double log_w, int sign) {
    const std::size_t k = c.weights.size();
    c.log_weights.push_back(log_w);
    c.signs.push_back(sign);
    c.weights.push_back(sign * std::exp(log_w));
    c.log_shift.push_back(std::log(c.params.mu + static_cast<double>(k)));
}

void check_x(double x, const char* who) {
    if (!(x >= 0.0) || std::isnan(x)) throw DomainError(std::string(who) + ": x must be >= 0");
}

}  // namespace

double SeriesCoeffs::log_coeff(std::size_t k) const {
    const double a = params.mu + static_cast<double>(k);
    return log_weights.at(k) + a * std::log(beta) - specfun::ln_gamma(a);
}

double SeriesCoeffs::coeff(std::size_t k) const { return signs.at(k) * std::exp(log_coeff(k)); }

double SeriesCoeffs::total_mass() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

SeriesCoeffs series_coeffs(const MtwParams& params, const NumericPolicy& policy) {
    validate(params);
    validate(policy);
    SeriesCoeffs c = empty_coeffs(params);
    if (params.K == 0.0) {
        push_weight(c, 0.0, 1);
        return c;
    }

    // w_k = E_theta[ Poisson(k; mu K (1 + S)) ] = e^{-mu K} (mu K)^k / k! A_k(-mu K)
    const double muk = params.mu * params.K;
    const double log_muk = std::log(muk);
    AngularMomentTable table(params.deltas, -muk);
    double mass = 0.0;
    for (std::size_t k = 0; k < policy.series_kmax; ++k) {
        table.extend(k);
        const double kd = static_cast<double>(k);
        const double log_w = -muk + kd * log_muk - specfun::ln_gamma(kd + 1.0) + table.log_moment(k);
        push_weight(c, log_w, 1);
        mass += c.weights.back();
        if (1.0 - mass < policy.series_rel_tol) break;
    }
    c.tail_mass = std::max(0.0, 1.0 - mass);
    c.cap_hit = c.tail_mass >= policy.series_rel_tol;
    return c;
}

SeriesCoeffs series_coeffs_expanded(const MtwParams& params, std::size_t terms) {
    validate(params);
    if (terms == 0) throw DomainError("series_coeffs_expanded: need at least one term");
    SeriesCoeffs c = empty_coeffs(params);
    if (params.K == 0.0) {
        push_weight(c, 0.0, 1);
        for (std::size_t k = 1; k < terms; ++k) push_weight(c, kNegInf, 1);
        return c;
    }
    const double muk = params.mu * params.K;
    const double log_muk = std::log(muk);
    double mass = 0.0;
    for (std::size_t k = 0; k < terms; ++k) {
        const double kd = static_cast<double>(k);
        const SignedLog a = angular_moment_expanded(params.deltas, -muk, static_cast<unsigned>(k));
        push_weight(c, -muk + kd * log_muk - specfun::ln_gamma(kd + 1.0) + a.log_abs, a.sign);
        mass += c.weights.back();
    }
    c.tail_mass = 1.0 - mass;
    return c;
}

double pdf_series(const SeriesCoeffs& c, double x) {
    check_x(x, "pdf_series");
    const double mu = c.params.mu;
    if (x == 0.0) {
        if (mu > 1.0) return 0.0;
        if (mu < 1.0) return std::numeric_limits<double>::infinity();
        return c.beta * c.weights.front();
    }
    if (std::isinf(x)) return 0.0;
    const double y = c.beta * x;
    const double log_y = std::log(y);
    // term_k = w_k beta t(mu + k - 1, y), t(a, y) = y^a e^{-y} / Gamma(a + 1)
    double log_t = specfun::log_gamma_term(mu - 1.0, y);
    double sum = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double e = c.log_weights[k] + log_t;
        if (e > -745.0) sum += c.signs[k] * std::exp(e);
        log_t += log_y - c.log_shift[k];
    }
    return std::max(0.0, c.beta * sum);
}

double cdf_series(const SeriesCoeffs& c, double x) {
    check_x(x, "cdf_series");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return std::clamp(c.total_mass(), 0.0, 1.0);
    const double y = c.beta * x;
    const double log_y = std::log(y);
    // Downward recurrence P(a - 1, y) = P(a, y) + t(a - 1, y): positive increments only.
    std::size_t k = c.size() - 1;
    double a = c.params.mu + static_cast<double>(k);
    double g = specfun::reg_lower_gamma(a, y);
    double log_t = k > 0 ? specfun::log_gamma_term(a - 1.0, y) : 0.0;
    double sum = 0.0;
    for (;;) {
        sum += c.weights[k] * g;
        if (k == 0) break;
        g += std::exp(log_t);
        // t(a - 2) = t(a - 1) (a - 1) / y
        log_t += c.log_shift[k - 1] - log_y;
        --k;
    }
    return std::clamp(sum, 0.0, 1.0);
}

}  // namespace mtw
