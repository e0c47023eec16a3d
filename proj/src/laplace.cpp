#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "mtw/angular.hpp"
#include "mtw/combinatorics.hpp"
#include "mtw/error.hpp"
#include "mtw/model.hpp"
#include "mtw/specfun.hpp"

namespace mtw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPoleEps = 1e-10;

struct LaplaceFrame {
    double c;      // mu (1 + K)
    double denom;  // mu (1 + K) - mean_snr s
    double a;      // mu K mean_snr s / denom
};

LaplaceFrame frame(const MtwParams& p, double s) {
    if (std::isnan(s)) throw DomainError("generalized MGF: s is NaN");
    const double c = p.mu * (1.0 + p.K);
    const double denom = c - p.mean_snr * s;
    if (!(denom >= kPoleEps * c)) {
        throw NumericError("generalized MGF: s = " + std::to_string(s) + " is at or beyond the pole s = " +
                           std::to_string(c / p.mean_snr));
    }
    return {c, denom, p.mu * p.K * p.mean_snr * s / denom};
}

double log_sum_exp(const std::vector<double>& v) {
    double m = kNegInf;
    for (double e : v) m = std::max(m, e);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double e : v) s += std::exp(e - m);
    return m + std::log(s);
}

// ln of the q-th summand of the generalized MGF without the angular factor:
//   ln C(n,q) + q ln(mu K) + ln Gamma(mu+n)/Gamma(mu+q) + (mu+q) ln c - (mu+q+n) ln denom
// `rise` holds cumulative sums of ln(mu + j).
double log_gmgf_prefactor(const MtwParams& p, const LaplaceFrame& f, const std::vector<double>& rise, unsigned n,
                          unsigned q) {
    const double log_muk = p.K > 0.0 ? std::log(p.mu * p.K) : kNegInf;
    if (q > 0 && log_muk == kNegInf) return kNegInf;
    return log_binomial(n, q) + (q > 0 ? q * log_muk : 0.0) + (rise[n] - rise[q]) +
           (p.mu + q) * std::log(f.c) - (p.mu + q + n) * std::log(f.denom);
}

std::vector<double> rising_logs(double mu, unsigned nmax) {
    std::vector<double> rise(nmax + 1, 0.0);
    for (unsigned j = 0; j < nmax; ++j) rise[j + 1] = rise[j] + std::log(mu + j);
    return rise;
}

}  // namespace

std::vector<double> log_gmgf_sequence(const MtwParams& params, unsigned nmax, double s) {
    validate(params);
    const LaplaceFrame f = frame(params, s);
    AngularMomentTable table(params.deltas, f.a);
    table.extend(params.K > 0.0 ? nmax : 0);
    const auto rise = rising_logs(params.mu, nmax);
    const double log_gbar = std::log(params.mean_snr);

    std::vector<double> out(nmax + 1);
    std::vector<double> terms;
    for (unsigned n = 0; n <= nmax; ++n) {
        terms.clear();
        const unsigned qmax = params.K > 0.0 ? n : 0;
        for (unsigned q = 0; q <= qmax; ++q) {
            terms.push_back(log_gmgf_prefactor(params, f, rise, n, q) + table.log_moment(q));
        }
        out[n] = n * log_gbar + f.a + log_sum_exp(terms);
    }
    return out;
}

double gmgf(const MtwParams& params, unsigned n, double s) { return std::exp(log_gmgf_sequence(params, n, s)[n]); }

double gmgf_expanded(const MtwParams& params, unsigned n, double s) {
    validate(params);
    const LaplaceFrame f = frame(params, s);
    const auto rise = rising_logs(params.mu, n);
    const unsigned qmax = params.K > 0.0 ? n : 0;
    double m = kNegInf;
    std::vector<SignedLog> terms;
    for (unsigned q = 0; q <= qmax; ++q) {
        const SignedLog a = angular_moment_expanded(params.deltas, f.a, q);
        terms.push_back({log_gmgf_prefactor(params, f, rise, n, q) + a.log_abs, a.sign});
        m = std::max(m, terms.back().log_abs);
    }
    if (m == kNegInf) return 0.0;
    double sum = 0.0;
    double comp = 0.0;
    for (const auto& t : terms) {
        const double v = t.sign * std::exp(t.log_abs - m);
        const double next = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - next) + v : (v - next) + sum;
        sum = next;
    }
    return (sum + comp) * std::exp(m + n * std::log(params.mean_snr) + f.a);
}

double log_mgf(const MtwParams& params, double s) {
    validate(params);
    const LaplaceFrame f = frame(params, s);
    double v = params.mu * (std::log(f.c) - std::log(f.denom)) + f.a;
    for (double d : params.deltas) v += specfun::log_bessel_i(0.0, f.a * d);
    return v;
}

double mgf(const MtwParams& params, double s) { return std::exp(log_mgf(params, s)); }

double moment(const MtwParams& params, unsigned n) {
    validate(params);
    if (n == 0) return 1.0;
    const unsigned nd = static_cast<unsigned>(params.deltas.size());
    const unsigned qmax = params.K > 0.0 ? n : 0;

    // h[i][r] = [r even] (Delta_i / 2)^r C(r, r/2) / r!, so that
    // B_q = sum_r C(q,r) r! sum_{tau(r,N)} prod_i h[i][r_i] = E[(1 + S)^q].
    std::vector<std::vector<double>> h(nd, std::vector<double>(qmax + 1, 0.0));
    for (unsigned i = 0; i < nd; ++i) {
        for (unsigned r = 0; r <= qmax; r += 2) {
            const double d = params.deltas[i];
            h[i][r] = std::exp(log_binomial(r, r / 2) - specfun::ln_gamma(r + 1.0)) * std::pow(0.5 * d, r);
        }
    }
    double total = 0.0;
    for (unsigned q = 0; q <= qmax; ++q) {
        double b = 0.0;
        for (unsigned r = 0; r <= q; ++r) {
            double inner = 0.0;
            if (nd == 0) {
                inner = r == 0 ? 1.0 : 0.0;
            } else {
                for_each_tuple(r, nd, [&](std::span<const unsigned> t) {
                    double prod = 1.0;
                    for (unsigned i = 0; i < nd; ++i) prod *= h[i][t[i]];
                    inner += prod;
                });
            }
            // C(q, r) r! = q! / (q - r)!
            double falling = 1.0;
            for (unsigned j = q - r + 1; j <= q; ++j) falling *= j;
            b += falling * inner;
        }
        double rising = 1.0;
        for (unsigned j = q; j < n; ++j) rising *= params.mu + j;
        total += std::exp(log_binomial(n, q)) * std::pow(params.mu * params.K, q) * rising * b;
    }
    return total * std::pow(params.mean_snr / (params.mu * (1.0 + params.K)), n);
}

double aof(const MtwParams& params) {
    validate(params);
    const double k = params.K;
    double d2 = 0.0;
    for (double d : params.deltas) d2 += d * d;
    return ((1.0 + 2.0 * k) / params.mu + 0.5 * k * k * d2) / ((1.0 + k) * (1.0 + k));
}

double asymptotic_cdf(const MtwParams& params, double x) {
    validate(params);
    if (!(x >= 0.0)) throw DomainError("asymptotic_cdf: x must be >= 0");
    if (x == 0.0) return 0.0;
    const double mu = params.mu;
    const double muk = mu * params.K;
    double v = mu * std::log(mu * (1.0 + params.K)) - specfun::ln_gamma(mu + 1.0) - muk +
               mu * std::log(x / params.mean_snr);
    for (double d : params.deltas) v += specfun::log_bessel_i(0.0, muk * d);
    return std::exp(v);
}

}  // namespace mtw
