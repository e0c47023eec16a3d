#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "mtw/fit.hpp"
#include "mtw/metrics.hpp"
#include "mtw/model.hpp"
#include "mtw/quadrature.hpp"
#include "mtw/sim.hpp"
#include "mtw/specfun.hpp"

namespace mtw::cli {

namespace {

struct Check {
    std::string name;
    std::function<double()> error;  // observed discrepancy
    double tol;
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

int selftest(std::ostream& out) {
    const MtwParams fig1{1.0, {0.8}, 5.0, 1.0};
    const NumericPolicy policy;
    std::vector<Check> checks{
        {"ln_gamma(1/2) = ln sqrt(pi)",
         [] { return rel(specfun::ln_gamma(0.5), 0.5 * std::log(std::numbers::pi)); }, 1e-14},
        {"half-order Bessel closed form",
         [] {
             const double x = 3.3;
             const double exact = std::exp(-x) * std::sqrt(2.0 / (std::numbers::pi * x)) * std::sinh(x);
             return rel(specfun::bessel_i_scaled(0.5, x).scaled_value, exact);
         },
         1e-13},
        {"P(1, x) = 1 - exp(-x)", [] { return rel(specfun::reg_lower_gamma(1.0, 0.7), -std::expm1(-0.7)); }, 1e-14},
        {"Marcum Q series vs integral",
         [] { return std::abs(specfun::marcum_q(8.17, 2.3, 1.1) - specfun::marcum_q_integral(8.17, 2.3, 1.1)); },
         1e-8},
        {"cosine moment vs quadrature",
         [] {
             const auto r = gauss_legendre(200, 0.0, std::numbers::pi);
             double s = 0.0;
             for (std::size_t i = 0; i < r.size(); ++i)
                 s += r.weights[i] * std::exp(-2.5 * std::cos(r.nodes[i])) * std::pow(std::cos(r.nodes[i]), 3);
             return rel(specfun::cos_exp_moment(-2.5, 3), s / std::numbers::pi);
         },
         1e-10},
        {"series vs integral PDF",
         [&] {
             const SnrDistribution d(fig1, policy);
             double sup = 0.0;
             for (int i = 0; i <= 100; ++i) {
                 const double x = 0.05 * i;
                 sup = std::max(sup, std::abs(d.pdf(x, Method::series) - d.pdf(x, Method::integral)));
             }
             return sup;
         },
         1e-6},
        {"series vs integral CDF",
         [&] {
             const SnrDistribution d(fig1, policy);
             return std::abs(d.cdf(1.0, Method::series) - d.cdf(1.0, Method::integral));
         },
         1e-8},
        {"first moment equals mean SNR", [&] { return rel(moment(fig1, 1), fig1.mean_snr); }, 1e-12},
        {"moment(4) = gmgf(4, 0)", [&] { return rel(moment(fig1, 4), gmgf(fig1, 4, 0.0)); }, 1e-10},
        {"gmgf(1, -1) vs MGF derivative",
         [&] {
             const double h = 1e-5;
             return rel(gmgf(fig1, 1, -1.0), (mgf(fig1, -1.0 + h) - mgf(fig1, -1.0 - h)) / (2.0 * h));
         },
         1e-6},
        {"AoF closed form vs moments",
         [&] { return rel(aof(fig1), moment(fig1, 2) - 1.0); }, 1e-10},
        {"simulated SNR vs CDF (KS, 2e4 samples)",
         [&] {
             const SnrDistribution d(fig1, policy);
             const auto s = sample_snr(amplitudes_from_params(fig1), 20000, 7);
             // KS distance relative to the 99% critical value
             return ks_distance(s, [&](double x) { return d.cdf(x); }) / (1.628 / std::sqrt(20000.0));
         },
         1.0},
        {"false alarm = Q(5, 5)",
         [] { return rel(false_alarm({5, 10.0}), specfun::reg_upper_gamma(5.0, 5.0)); }, 1e-14},
        {"AUC vs trapezoid ROC",
         [&] {
             const MtwParams p{10.0, {0.3}, 5.0, 1.0};
             std::vector<double> etas;
             for (int i = 0; i <= 2000; ++i) etas.push_back(std::pow(10.0, -4.0 + 7.0 * i / 2000.0));
             const auto r = roc(p, 1, etas, policy);
             // pf decreases with eta; integrate pd d(pf) and close the ends at (1,1) and (0,0)
             double area = (1.0 - r.front().pf) * 0.5 * (1.0 + r.front().pd);
             for (std::size_t i = 1; i < r.size(); ++i)
                 area += (r[i - 1].pf - r[i].pf) * 0.5 * (r[i - 1].pd + r[i].pd);
             area += r.back().pf * 0.5 * r.back().pd;
             return std::abs(area - auc(p, 1, policy));
         },
         1e-4},
        {"composite PDF integrates to one",
         [&] {
             const IgParams ig{3, 1.0, 1.0};
             const MtwParams p{1.0, {0.8}, 2.0, 1.0};
             // q = e^t over t in [-12, 8]
             const auto r = gauss_legendre(400, -12.0, 8.0);
             double s = 0.0;
             for (std::size_t i = 0; i < r.size(); ++i) {
                 const double q = std::exp(r.nodes[i]);
                 s += r.weights[i] * q * ig_pdf(ig, p, q);
             }
             return std::abs(s - 1.0);
         },
         1e-4},
    };

    int failures = 0;
    for (const auto& c : checks) {
        double e = 0.0;
        std::string note;
        try {
            e = c.error();
        } catch (const std::exception& ex) {
            e = std::numeric_limits<double>::infinity();
            note = std::string(" (") + ex.what() + ")";
        }
        const bool ok = e <= c.tol;
        if (!ok) ++failures;
        out << (ok ? "ok   " : "FAIL ") << c.name << "  [" << e << " <= " << c.tol << "]" << note << '\n';
    }
    out << (failures == 0 ? "selftest passed" : "selftest failed: " + std::to_string(failures) + " check(s)") << '\n';
    return failures;
}

}  // namespace mtw::cli
