#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "integral_detail.hpp"
#include "mtw/error.hpp"
#include "mtw/model.hpp"
#include "mtw/specfun.hpp"

namespace mtw {

namespace detail {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Visits every tensor node with S = sum_i Delta_i cos(theta_i) and the
// product weight, odometer order (last dimension fastest).
template <class Visit>
void for_each_node(const std::vector<double>& deltas, const GaussLegendreRule& rule, Visit&& visit) {
    const std::size_t dim = deltas.size();
    const std::size_t n = rule.size();
    std::vector<std::size_t> idx(dim, 0);
    for (;;) {
        double s = 0.0;
        double w = 1.0;
        for (std::size_t i = 0; i < dim; ++i) {
            s += deltas[i] * rule.nodes[idx[i]];
            w *= rule.weights[idx[i]];
        }
        visit(s, w);
        std::size_t d = dim;
        while (d > 0) {
            --d;
            if (++idx[d] < n) break;
            idx[d] = 0;
            if (d == 0) return;
        }
        if (dim == 0) return;
    }
}

void check_dim(const std::vector<double>& active, const NumericPolicy& policy) {
    if (active.size() > policy.max_integral_dim) {
        throw DomainError("integral form: " + std::to_string(active.size()) +
                          " angular dimensions exceed max_integral_dim = " + std::to_string(policy.max_integral_dim) +
                          "; use the series form");
    }
}

}  // namespace

GaussLegendreRule angle_rule(std::size_t nodes) {
    GaussLegendreRule r = gauss_legendre(nodes, 0.0, std::numbers::pi);
    for (std::size_t j = 0; j < r.size(); ++j) {
        r.nodes[j] = std::cos(r.nodes[j]);
        r.weights[j] /= std::numbers::pi;
    }
    return r;
}

std::vector<double> active_deltas(const MtwParams& params) {
    std::vector<double> out;
    for (double d : params.deltas)
        if (d > 0.0) out.push_back(d);
    return out;
}

double pdf_integral(const MtwParams& p, const std::vector<double>& active, const GaussLegendreRule& rule, double x) {
    if (!(x >= 0.0)) throw DomainError("pdf_integral: x must be >= 0");
    const double mu = p.mu;
    const double zeta = (1.0 + p.K) / p.mean_snr;
    const double beta = mu * zeta;
    if (std::isinf(x)) return 0.0;
    if (x == 0.0) {
        if (mu > 1.0) return 0.0;
        if (mu < 1.0) return std::numeric_limits<double>::infinity();
        double log_v = std::log(zeta) - p.K;
        for (double d : active) log_v += specfun::log_bessel_i(0.0, p.K * d);
        return std::exp(log_v);
    }
    if (p.K == 0.0) {
        return std::exp(mu * std::log(beta) + (mu - 1.0) * std::log(x) - beta * x - specfun::ln_gamma(mu));
    }

    const double muk = mu * p.K;
    const double log_front =
        std::log(beta) - muk - beta * x + 0.5 * (mu - 1.0) * (std::log(beta * x) - std::log(muk));
    const double c = 2.0 * mu * std::sqrt(zeta * p.K * x);

    // Streaming log-sum-exp of  ln w - mu K S + ((1 - mu)/2) ln u + ln I_{mu-1}(c sqrt u)
    double m = kNegInf;
    double acc = 0.0;
    for_each_node(active, rule, [&](double s, double w) {
        const double u = std::max(1.0 + s, 1e-300);
        const double e = std::log(w) - muk * s + 0.5 * (1.0 - mu) * std::log(u) +
                         specfun::log_bessel_i(mu - 1.0, c * std::sqrt(u));
        if (e <= m) {
            acc += std::exp(e - m);
        } else {
            acc = acc * std::exp(m - e) + 1.0;
            m = e;
        }
    });
    if (m == kNegInf) return 0.0;
    return std::exp(log_front + m + std::log(acc));
}

double cdf_integral(const MtwParams& p, const std::vector<double>& active, const GaussLegendreRule& rule, double x) {
    if (!(x >= 0.0)) throw DomainError("cdf_integral: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double beta = p.mu * (1.0 + p.K) / p.mean_snr;
    if (p.K == 0.0) return specfun::reg_lower_gamma(p.mu, beta * x);
    const double b = std::sqrt(2.0 * beta * x);
    const double two_muk = 2.0 * p.mu * p.K;
    double sum = 0.0;
    for_each_node(active, rule, [&](double s, double w) {
        const double u = std::max(1.0 + s, 0.0);
        sum += w * specfun::marcum_p(p.mu, std::sqrt(two_muk * u), b);
    });
    return std::clamp(sum, 0.0, 1.0);
}

}  // namespace detail

double pdf_integral(const MtwParams& params, const NumericPolicy& policy, double x) {
    validate(params);
    validate(policy);
    const auto active = detail::active_deltas(params);
    detail::check_dim(active, policy);
    return detail::pdf_integral(params, active, detail::angle_rule(policy.quad_nodes_per_dim), x);
}

double cdf_integral(const MtwParams& params, const NumericPolicy& policy, double x) {
    validate(params);
    validate(policy);
    const auto active = detail::active_deltas(params);
    detail::check_dim(active, policy);
    return detail::cdf_integral(params, active, detail::angle_rule(policy.quad_nodes_per_dim), x);
}

}  // namespace mtw
