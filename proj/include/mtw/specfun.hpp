#ifndef MTW_SPECFUN_HPP
#define MTW_SPECFUN_HPP

// Special-function kernel: log-gamma, exponentially scaled modified Bessel I
// of real order, regularized incomplete gamma, generalized Marcum Q and the
// angular cosine-exponential moments.
//
// All routines are pure functions. Tail series stop once a term drops below
// kSeriesTol times the running sum; more than kSeriesCap terms raises
// NumericError.

#include <cstddef>

namespace mtw::specfun {

inline constexpr double kSeriesTol = 1e-15;
inline constexpr std::size_t kSeriesCap = 10000;

/// ln Gamma(a) for a > 0.
double ln_gamma(double a);

/// e^{-|x|} I_order(x) together with the log-magnitude of the unscaled value,
/// so that products like e^{-mu K} I_0(mu K Delta) can be formed without
/// overflow.
struct ScaledBessel {
    double order = 0.0;
    double argument = 0.0;
    double scaled_value = 0.0;  ///< e^{-|argument|} I_order(argument)
    double log_abs = 0.0;       ///< ln |I_order(argument)|
    int sign = 1;               ///< sign of I_order(argument)

    double log_value() const { return log_abs; }
    double value() const;
};

/// Modified Bessel function of the first kind, exponentially scaled.
///
/// Supported orders: any order > -1, and negative integers (I_{-n} = I_n).
/// Negative arguments are accepted for integer orders only
/// (I_n(-x) = (-1)^n I_n(x)). Anything else throws DomainError.
ScaledBessel bessel_i_scaled(double order, double x);

/// ln |I_order(x)|; same domain as bessel_i_scaled.
double log_bessel_i(double order, double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
double reg_lower_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// directly where it is the smaller tail.
double reg_upper_gamma(double a, double x);

/// ln( x^a e^{-x} / Gamma(a + 1) ), the log of a Poisson-like term.
double log_gamma_term(double a, double x);

/// Generalized Marcum Q function of real order > 0 via the Poisson-weighted
/// incomplete-gamma series.
double marcum_q(double order, double a, double b);

/// 1 - Q_order(a, b), evaluated without cancellation when Q is close to 1.
double marcum_p(double order, double a, double b);

/// Q_order(a, b) by Gauss-Legendre quadrature of the defining integral
///   a^{1-v} int_b^inf x^v exp(-(x^2 + a^2)/2) I_{v-1}(a x) dx.
/// Used as a fallback for very large a and as a cross-check.
double marcum_q_integral(double order, double a, double b);

/// (1/pi) int_0^pi exp(alpha cos t) cos^m t dt through the closed form
/// 2^{-m} sum_l C(m, l) I_{2l-m}(alpha).
double cos_exp_moment(double alpha, unsigned m);

/// ln | cos_exp_moment(alpha, m) |; the sign is (-1)^m for alpha < 0, else +.
double log_abs_cos_exp_moment(double alpha, unsigned m);

/// ln( (1/pi) int_0^pi exp(x cos t) (1 + cos t)^j dt ).
///
/// The integrand is nonnegative, and the closed form
///   C(2j, j) 2^{-j} e^{-|x|} 1F1(., j + 1; 2|x|)
/// is a series of positive terms for either sign of x, so this is the
/// cancellation-free building block for the angular averages of the model.
double log_cos_exp_shifted_moment(double x, unsigned j);

/// ln 1F1(a; b; z) for a, b > 0 and z >= 0 (all series terms positive).
double log_hyp1f1_positive(double a, double b, double z);

}  // namespace mtw::specfun

#endif  // MTW_SPECFUN_HPP
