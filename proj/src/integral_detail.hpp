#ifndef MTW_SRC_INTEGRAL_DETAIL_HPP
#define MTW_SRC_INTEGRAL_DETAIL_HPP

#include <vector>

#include "mtw/params.hpp"
#include "mtw/quadrature.hpp"

namespace mtw::detail {

/// Nodes cos(theta_j) and weights (summing to 1) of the Gauss-Legendre
/// rule for the uniform average over theta in [0, pi].
GaussLegendreRule angle_rule(std::size_t nodes);

/// Nonzero Delta_i; the remaining angular dimensions.
std::vector<double> active_deltas(const MtwParams& params);

double pdf_integral(const MtwParams& params, const std::vector<double>& active, const GaussLegendreRule& rule,
                    double x);
double cdf_integral(const MtwParams& params, const std::vector<double>& active, const GaussLegendreRule& rule,
                    double x);

}  // namespace mtw::detail

#endif
