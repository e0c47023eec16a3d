#include "mtw/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mtw/error.hpp"
#include "mtw/quadrature.hpp"

namespace mtw::specfun {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRescale = 1e250;
const double kLogRescale = std::log(kRescale);

[[noreturn]] void cap_reached(const char* what) {
    throw NumericError(std::string(what) + ": series did not converge within " +
                       std::to_string(kSeriesCap) + " terms");
}

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

// Sum of positive terms t_0 = 1, t_{n+1} = t_n * ratio(n), returned as a log.
// Rescales both the running sum and the running term when they grow large.
template <class Ratio>
double log_positive_series(double log_t0, Ratio ratio) {
    double t = 1.0;
    double s = 1.0;
    double scale = log_t0;
    for (std::size_t n = 0; n < kSeriesCap; ++n) {
        const double r = ratio(n);
        t *= r;
        s += t;
        if (s > kRescale) {
            s /= kRescale;
            t /= kRescale;
            scale += kLogRescale;
        }
        // Once the ratio is below one and decreasing, t * r / (1 - r) bounds
        // the remaining tail.
        const double r_next = ratio(n + 1);
        if (r_next < 1.0 && t * r_next / (1.0 - r_next) < kSeriesTol * s) {
            return scale + std::log(s);
        }
        if (t == 0.0) return scale + std::log(s);
    }
    cap_reached("log_positive_series");
}

// Ascending series for ln I_nu(x), x > 0, nu > -1.
double log_bessel_ascending(double nu, double x) {
    const double q = 0.25 * x * x;
    const double log_t0 = nu * std::log(0.5 * x) - ln_gamma(nu + 1.0);
    return log_positive_series(log_t0, [&](std::size_t n) {
        const double k = static_cast<double>(n + 1);
        return q / (k * (k + nu));
    });
}

// Hankel expansion e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum (-1)^k a_k(nu) / x^k.
// Accepted only if the terms shrink monotonically below 1e-17 of the sum;
// otherwise the caller falls back to the ascending series.
bool log_bessel_hankel(double nu, double x, double& out) {
    const double mu4 = 4.0 * nu * nu;
    double t = 1.0;
    double s = 1.0;
    for (int k = 1; k < 400; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double tn = -t * (mu4 - odd * odd) / (8.0 * k * x);
        if (std::abs(tn) > std::abs(t)) return false;
        s += tn;
        t = tn;
        if (std::abs(t) <= 1e-17 * std::abs(s)) {
            if (s <= 0.0) return false;
            out = x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log(s);
            return true;
        }
    }
    return false;
}

// ln I_nu(x) for x >= 0 and nu > -1.
double log_bessel_nonneg(double nu, double x) {
    if (x == 0.0) {
        if (nu == 0.0) return 0.0;
        return nu > 0.0 ? -kInf : kInf;
    }
    if (x >= 30.0) {
        double out = 0.0;
        if (log_bessel_hankel(nu, x, out)) return out;
    }
    return log_bessel_ascending(nu, x);
}

struct BesselArgs {
    double order;
    double x;
    int sign;
};

BesselArgs normalize_bessel(double order, double x) {
    if (!std::isfinite(order) || std::isnan(x)) {
        throw DomainError("bessel_i: non-finite order or argument");
    }
    const bool integer = is_integer(order);
    if (order < 0.0) {
        if (integer) {
            order = -order;
        } else if (order <= -1.0) {
            throw DomainError("bessel_i: negative non-integer order below -1 is not supported");
        }
    }
    int sign = 1;
    if (x < 0.0) {
        if (!integer) throw DomainError("bessel_i: negative argument requires an integer order");
        if (std::fmod(order, 2.0) != 0.0) sign = -1;
        x = -x;
    }
    return {order, x, sign};
}

// P(a, x) by its power series; valid and fast for x < a + 1.
double lower_gamma_series(double a, double x) {
    const double log_prefix = a * std::log(x) - x - ln_gamma(a + 1.0);
    double term = 1.0;
    double sum = 1.0;
    for (std::size_t n = 1; n < kSeriesCap; ++n) {
        term *= x / (a + static_cast<double>(n));
        sum += term;
        if (term < 1e-17 * sum) return std::exp(log_prefix + std::log(sum));
    }
    cap_reached("reg_lower_gamma");
}

// Q(a, x) by the Lentz continued fraction; valid for x >= a + 1.
double upper_gamma_fraction(double a, double x) {
    // h <= 1 here, so a prefix below the double range means Q underflows.
    const double log_prefix = a * std::log(x) - x - ln_gamma(a);
    if (log_prefix < -760.0) return 0.0;
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (std::size_t i = 1; i < kSeriesCap; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            return std::exp(log_prefix + std::log(h));
        }
    }
    cap_reached("reg_upper_gamma");
}

void check_gamma_args(double a, double x) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("incomplete gamma: a must be > 0");
    if (!(x >= 0.0)) throw DomainError("incomplete gamma: x must be >= 0");
}

// Sum_k Pois(k; lam) * G(nu + k, y), where G is P (upper == false) or Q.
//
// Q(nu + k, y) increases with k and P(nu + k, y) decreases, so each sum is
// run in the direction where the incomplete-gamma recurrence only adds
// positive terms:
//   Q(a + 1, y) = Q(a, y) + t(a),   P(a, y) = P(a + 1, y) + t(a),
// with t(a) = y^a e^{-y} / Gamma(a + 1).
double poisson_gamma_mixture(double nu, double lam, double y, bool upper) {
    if (lam == 0.0) return upper ? reg_upper_gamma(nu, y) : reg_lower_gamma(nu, y);

    constexpr double kWeightFloor = 1e-18;
    const double mode = std::floor(lam);
    const double log_w_mode = -lam + mode * std::log(lam) - ln_gamma(mode + 1.0);
    const double w_mode = std::exp(log_w_mode);
    const double log_y = std::log(y);

    std::size_t terms = 0;
    auto count = [&] {
        if (++terms > kSeriesCap) cap_reached("marcum_q");
    };

    double sum = 0.0;
    if (upper) {
        // Start where the Poisson weight is negligible below the mode.
        double k = mode;
        double w = 1.0;  // relative to w_mode
        while (k > 0.0 && w >= kWeightFloor) {
            w *= k / lam;
            k -= 1.0;
            count();
        }
        double a = nu + k;
        double g = reg_upper_gamma(a, y);
        double log_t = log_gamma_term(a, y);
        for (;;) {
            sum += w * g;
            // G for the next index, then advance the weight.
            g += std::exp(log_t);
            log_t += log_y - std::log(a + 1.0);
            a += 1.0;
            w *= lam / (k + 1.0);
            k += 1.0;
            count();
            if (k > lam) {
                const double r = lam / (k + 1.0);
                if (w / (1.0 - r) < kSeriesTol * 1e-2 * sum || w == 0.0) break;
            }
        }
    } else {
        // Start where the Poisson weight is negligible above the mode.
        double k = mode;
        double w = 1.0;
        while (w >= kWeightFloor || k <= lam) {
            w *= lam / (k + 1.0);
            k += 1.0;
            count();
        }
        double a = nu + k;
        double g = reg_lower_gamma(a, y);
        double log_t = log_gamma_term(a - 1.0, y);
        for (;;) {
            sum += w * g;
            if (k == 0.0) break;
            // P(a - 1) = P(a) + t(a - 1)
            g += std::exp(log_t);
            log_t -= log_y - std::log(a - 1.0);
            a -= 1.0;
            w *= k / lam;
            k -= 1.0;
            count();
            if (k < lam) {
                const double r = k / lam;
                if (w / (1.0 - r) < kSeriesTol * 1e-2 * sum || w == 0.0) {
                    sum += w * g;
                    break;
                }
            }
        }
    }
    return std::min(1.0, sum * w_mode);
}

void check_marcum_args(double order, double a, double b) {
    if (!(order > 0.0) || !std::isfinite(order)) throw DomainError("marcum_q: order must be > 0");
    if (!(a >= 0.0) || !(b >= 0.0)) throw DomainError("marcum_q: a and b must be >= 0");
}

// Returns {Q, P} with the smaller tail computed directly.
std::array<double, 2> marcum_pair(double order, double a, double b) {
    if (b == 0.0) return {1.0, 0.0};
    if (std::isinf(b)) return {0.0, 1.0};
    const double y = 0.5 * b * b;
    if (a == 0.0) return {reg_upper_gamma(order, y), reg_lower_gamma(order, y)};
    const double lam = 0.5 * a * a;
    const bool direct_q = y > lam + order;
    try {
        const double v = poisson_gamma_mixture(order, lam, y, direct_q);
        return direct_q ? std::array{v, 1.0 - v} : std::array{1.0 - v, v};
    } catch (const NumericError&) {
        const double q = marcum_q_integral(order, a, b);
        return {q, 1.0 - q};
    }
}

}  // namespace

double ln_gamma(double a) {
    if (!(a > 0.0)) throw DomainError("ln_gamma: argument must be > 0");
    if (std::isinf(a)) return kInf;
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(a, &sign);
#else
    return std::lgamma(a);
#endif
}

double ScaledBessel::value() const {
    return static_cast<double>(sign) * std::exp(log_abs);
}

ScaledBessel bessel_i_scaled(double order, double x) {
    const BesselArgs n = normalize_bessel(order, x);
    ScaledBessel out;
    out.order = order;
    out.argument = x;
    out.sign = n.sign;
    out.log_abs = log_bessel_nonneg(n.order, n.x);
    out.scaled_value = static_cast<double>(n.sign) * std::exp(out.log_abs - n.x);
    return out;
}

double log_bessel_i(double order, double x) {
    const BesselArgs n = normalize_bessel(order, x);
    return log_bessel_nonneg(n.order, n.x);
}

double reg_lower_gamma(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return lower_gamma_series(a, x);
    return 1.0 - upper_gamma_fraction(a, x);
}

double reg_upper_gamma(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - lower_gamma_series(a, x);
    return upper_gamma_fraction(a, x);
}

double log_gamma_term(double a, double x) {
    if (x == 0.0) return a == 0.0 ? 0.0 : -kInf;
    return a * std::log(x) - x - ln_gamma(a + 1.0);
}

double marcum_q(double order, double a, double b) {
    check_marcum_args(order, a, b);
    return std::clamp(marcum_pair(order, a, b)[0], 0.0, 1.0);
}

double marcum_p(double order, double a, double b) {
    check_marcum_args(order, a, b);
    return std::clamp(marcum_pair(order, a, b)[1], 0.0, 1.0);
}

double marcum_q_integral(double order, double a, double b) {
    check_marcum_args(order, a, b);
    if (b == 0.0) return 1.0;
    if (a == 0.0) return reg_upper_gamma(order, 0.5 * b * b);

    const double nu1 = order - 1.0;
    const double log_a = std::log(a);
    // ln of the integrand x^v exp(-(x^2 + a^2)/2) I_{v-1}(a x) a^{1-v}
    auto log_integrand = [&](double x) {
        return order * std::log(x) - 0.5 * (x - a) * (x - a) - a * x +
               log_bessel_i(nu1, a * x) - nu1 * log_a;
    };

    const double peak = std::max(a, std::sqrt(std::max(0.0, 2.0 * order - 1.0)));
    const double lo = std::max(b, peak - 14.0);
    const double hi = std::max(b, peak) + 14.0;
    const auto rule = gauss_legendre(24);
    constexpr double panel = 0.5;
    const auto panels = static_cast<std::size_t>(std::ceil((hi - lo) / panel));
    const double h = (hi - lo) / static_cast<double>(panels);
    double sum = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double left = lo + static_cast<double>(p) * h;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = left + 0.5 * h * (rule.nodes[i] + 1.0);
            sum += 0.5 * h * rule.weights[i] * std::exp(log_integrand(x));
        }
    }
    return std::clamp(sum, 0.0, 1.0);
}

double log_abs_cos_exp_moment(double alpha, unsigned m) {
    const double x = std::abs(alpha);
    const double md = static_cast<double>(m);
    const double log_norm = ln_gamma(md + 1.0) - md * std::numbers::ln2;
    double s = 0.0;
    for (unsigned l = 0; l <= m; ++l) {
        const double order = std::abs(2.0 * l - md);
        const double log_binom = log_norm - ln_gamma(l + 1.0) - ln_gamma(md - l + 1.0);
        const double lb = log_bessel_nonneg(order, x);
        s += std::exp(log_binom + lb - x);
    }
    return std::log(s) + x;
}

double cos_exp_moment(double alpha, unsigned m) {
    const double mag = std::exp(log_abs_cos_exp_moment(alpha, m));
    return (alpha < 0.0 && (m % 2U) == 1U) ? -mag : mag;
}

double log_hyp1f1_positive(double a, double b, double z) {
    if (!(a > 0.0) || !(b > 0.0) || !(z >= 0.0)) {
        throw DomainError("log_hyp1f1_positive: requires a, b > 0 and z >= 0");
    }
    if (z == 0.0) return 0.0;
    return log_positive_series(0.0, [&](std::size_t n) {
        const double nd = static_cast<double>(n);
        return (a + nd) * z / ((b + nd) * (nd + 1.0));
    });
}

double log_cos_exp_shifted_moment(double x, unsigned j) {
    const double jd = static_cast<double>(j);
    const double log_c = ln_gamma(2.0 * jd + 1.0) - 2.0 * ln_gamma(jd + 1.0) - jd * std::numbers::ln2;
    if (x >= 0.0) return log_c - x + log_hyp1f1_positive(jd + 0.5, jd + 1.0, 2.0 * x);
    return log_c + x + log_hyp1f1_positive(0.5, jd + 1.0, -2.0 * x);
}

}  // namespace mtw::specfun
