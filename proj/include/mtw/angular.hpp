#ifndef MTW_ANGULAR_HPP
#define MTW_ANGULAR_HPP

// Angular averages shared by the series coefficients and the generalized MGF:
//
//   A_q(a) = E[ exp(a S) (1 + S)^q ],   S = sum_i Delta_i cos(theta_i),
//
// with theta_i independent and uniform on [0, pi].

#include <cstddef>
#include <span>
#include <vector>

namespace mtw {

struct SignedLog {
    double log_abs = 0.0;
    int sign = 1;

    double value() const;
};

/// ln A_q(a) for q = 0, 1, ..., built by splitting
///   1 + S = (1 - sum Delta) + sum_i Delta_i (1 + cos theta_i)
/// into nonnegative parts. Every term of the resulting multinomial sum is
/// positive, so the table is free of the cancellation that the expanded
/// form suffers when |a| Delta_i is large.
class AngularMomentTable {
public:
    AngularMomentTable(std::span<const double> deltas, double a);

    /// Makes entries 0..qmax available.
    void extend(std::size_t qmax);

    double log_moment(std::size_t q) const { return table_.at(q); }
    std::size_t size() const { return table_.size(); }

private:
    void push_next();

    std::vector<double> deltas_;
    double a_;
    double log_slack_;
    std::vector<double> log_delta_;
    std::vector<std::vector<double>> parts_;  // per component: j ln w - ln j! (+ ln M_j)
    std::vector<std::vector<double>> conv_;   // running log-convolutions
    std::vector<double> table_;
};

/// A_q(a) through the expanded closed form
///   sum_r C(q, r) r! sum_{tau(r, N)} prod_i (Delta_i/2)^{r_i}/r_i! sum_l C(r_i, l) I_{2l - r_i}(a Delta_i),
/// summed as sign/log-magnitude pairs with compensated summation. Exact in
/// exact arithmetic; in floating point it loses roughly
/// log10(e^{|a| sum Delta} (1 + sum Delta)^q / A_q) digits.
SignedLog angular_moment_expanded(std::span<const double> deltas, double a, unsigned q);

}  // namespace mtw

#endif  // MTW_ANGULAR_HPP
