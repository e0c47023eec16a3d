#include "mtw/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mtw {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             const NelderMeadOptions& opt) {
    const std::size_t n = x0.size();
    NelderMeadResult res;
    auto eval = [&](const std::vector<double>& x) {
        ++res.evaluations;
        const double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opt.initial_step;
    std::vector<double> val(n + 1);
    for (std::size_t i = 0; i <= n; ++i) val[i] = eval(pts[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
        std::vector<std::vector<double>> p2;
        std::vector<double> v2;
        for (auto i : order) {
            p2.push_back(pts[i]);
            v2.push_back(val[i]);
        }
        pts = std::move(p2);
        val = std::move(v2);
    };
    auto diameter = [&] {
        double d = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += (pts[i][j] - pts[0][j]) * (pts[i][j] - pts[0][j]);
            d = std::max(d, std::sqrt(s));
        }
        return d;
    };
    auto along = [&](const std::vector<double>& c, double t) {
        // c + t (c - worst)
        std::vector<double> x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = c[j] + t * (c[j] - pts[n][j]);
        return x;
    };

    sort_simplex();
    while (true) {
        if (diameter() < opt.diameter_tol) {
            res.converged = true;
            break;
        }
        // An iteration costs at most n + 2 calls (reflect, expand or contract, shrink).
        if (res.evaluations + n + 2 > opt.max_evaluations) break;
        ++res.iterations;

        std::vector<double> c(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) c[j] += pts[i][j] / static_cast<double>(n);

        const auto xr = along(c, 1.0);
        const double fr = eval(xr);
        if (fr < val[0]) {
            const auto xe = along(c, 2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[n] = xe;
                val[n] = fe;
            } else {
                pts[n] = xr;
                val[n] = fr;
            }
        } else if (fr < val[n - 1]) {
            pts[n] = xr;
            val[n] = fr;
        } else {
            const bool outside = fr < val[n];
            const auto xc = along(c, outside ? 0.5 : -0.5);
            const double fc = eval(xc);
            if (fc < (outside ? fr : val[n])) {
                pts[n] = xc;
                val[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
                    val[i] = eval(pts[i]);
                }
            }
        }
        sort_simplex();
        res.trace.push_back(val[0]);
    }
    res.x = pts[0];
    res.fx = val[0];
    return res;
}

}  // namespace mtw
