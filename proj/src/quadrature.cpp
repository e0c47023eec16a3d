#include "mtw/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "mtw/error.hpp"

namespace mtw {

GaussLegendreRule gauss_legendre(std::size_t n) {
    if (n == 0) throw DomainError("gauss_legendre: n must be >= 1");
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kd = static_cast<double>(k);
                const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = nd * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        if (n == 1) {
            rule.nodes[0] = 0.0;
            rule.weights[0] = 2.0;
            break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

GaussLegendreRule gauss_legendre(std::size_t n, double lo, double hi) {
    GaussLegendreRule rule = gauss_legendre(n);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

}  // namespace mtw
