#ifndef MTW_QUADRATURE_HPP
#define MTW_QUADRATURE_HPP

#include <cstddef>
#include <vector>

namespace mtw {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n), n >= 1.
GaussLegendreRule gauss_legendre(std::size_t n);

/// The same rule mapped onto [lo, hi].
GaussLegendreRule gauss_legendre(std::size_t n, double lo, double hi);

}  // namespace mtw

#endif  // MTW_QUADRATURE_HPP
