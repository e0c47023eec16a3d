#include <cmath>

#include "integral_detail.hpp"
#include "mtw/error.hpp"
#include "mtw/model.hpp"
#include "mtw/parallel.hpp"
#include "mtw/reference.hpp"

namespace mtw {

SnrDistribution::SnrDistribution(MtwParams params, NumericPolicy policy)
    : params_(std::move(params)), policy_(policy) {
    validate(params_);
    validate(policy_);
    coeffs_ = series_coeffs(params_, policy_);
    active_deltas_ = detail::active_deltas(params_);
    if (integral_available()) angle_rule_ = detail::angle_rule(policy_.quad_nodes_per_dim);
}

Method SnrDistribution::resolve(Method method) const {
    if (method != Method::automatic) return method;
    if (coeffs_.cap_hit && integral_available()) return Method::integral;
    return Method::series;
}

double SnrDistribution::pdf_integral(double x) const {
    if (!integral_available()) {
        throw DomainError("integral form: " + std::to_string(integral_dim()) +
                          " angular dimensions exceed max_integral_dim; use the series form");
    }
    return detail::pdf_integral(params_, active_deltas_, angle_rule_, x);
}

double SnrDistribution::cdf_integral(double x) const {
    if (!integral_available()) {
        throw DomainError("integral form: " + std::to_string(integral_dim()) +
                          " angular dimensions exceed max_integral_dim; use the series form");
    }
    return detail::cdf_integral(params_, active_deltas_, angle_rule_, x);
}

double SnrDistribution::pdf(double x, Method method) const {
    return resolve(method) == Method::integral ? pdf_integral(x) : pdf_series(coeffs_, x);
}

double SnrDistribution::cdf(double x, Method method) const {
    return resolve(method) == Method::integral ? cdf_integral(x) : cdf_series(coeffs_, x);
}

std::vector<double> SnrDistribution::pdf_grid(std::span<const double> xs, Method method) const {
    std::vector<double> out(xs.size());
    parallel::for_each_index(xs.size(), [&](std::size_t i) { out[i] = pdf(xs[i], method); });
    return out;
}

std::vector<double> SnrDistribution::cdf_grid(std::span<const double> xs, Method method) const {
    std::vector<double> out(xs.size());
    parallel::for_each_index(xs.size(), [&](std::size_t i) { out[i] = cdf(xs[i], method); });
    return out;
}

namespace reference {

std::vector<double> pdf_grid(const SnrDistribution& dist, std::span<const double> xs, Method method) {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = dist.pdf(xs[i], method);
    return out;
}

std::vector<double> cdf_grid(const SnrDistribution& dist, std::span<const double> xs, Method method) {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = dist.cdf(xs[i], method);
    return out;
}

}  // namespace reference

}  // namespace mtw
