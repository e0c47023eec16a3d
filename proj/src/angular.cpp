#include "mtw/angular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mtw/combinatorics.hpp"
#include "mtw/specfun.hpp"

namespace mtw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln sum_j exp(a[q - j] + b[j]) for j = 0..q
double log_convolve_at(const std::vector<double>& a, const std::vector<double>& b, std::size_t q) {
    double m = kNegInf;
    for (std::size_t j = 0; j <= q; ++j) m = std::max(m, a[q - j] + b[j]);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (std::size_t j = 0; j <= q; ++j) s += std::exp(a[q - j] + b[j] - m);
    return m + std::log(s);
}

// Neumaier-compensated sum of signed terms given as (log|t|, sign).
SignedLog signed_log_sum(const std::vector<SignedLog>& terms) {
    double m = kNegInf;
    for (const auto& t : terms) m = std::max(m, t.log_abs);
    if (m == kNegInf) return {kNegInf, 1};
    double sum = 0.0;
    double comp = 0.0;
    for (const auto& t : terms) {
        const double v = t.sign * std::exp(t.log_abs - m);
        const double s = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - s) + v : (v - s) + sum;
        sum = s;
    }
    sum += comp;
    if (sum == 0.0) return {kNegInf, 1};
    return {m + std::log(std::abs(sum)), sum < 0.0 ? -1 : 1};
}

}  // namespace

double SignedLog::value() const { return sign * std::exp(log_abs); }

AngularMomentTable::AngularMomentTable(std::span<const double> deltas, double a) : a_(a) {
    double total = 0.0;
    for (double d : deltas) {
        total += d;
        if (d > 0.0) deltas_.push_back(d);
    }
    const double slack = std::max(0.0, 1.0 - total);
    log_slack_ = slack > 0.0 ? std::log(slack) : kNegInf;
    for (double d : deltas_) log_delta_.push_back(std::log(d));
    parts_.resize(deltas_.size() + 1);
    conv_.resize(deltas_.size() + 1);
}

void AngularMomentTable::push_next() {
    const std::size_t q = table_.size();
    const double qd = static_cast<double>(q);
    const double log_fact = specfun::ln_gamma(qd + 1.0);

    // Slack component: (1 - sum Delta)^j / j!
    parts_[0].push_back(q == 0 ? 0.0 : (log_slack_ == kNegInf ? kNegInf : qd * log_slack_ - log_fact));
    conv_[0].push_back(parts_[0].back());
    for (std::size_t i = 0; i < deltas_.size(); ++i) {
        const double x = a_ * deltas_[i];
        parts_[i + 1].push_back(qd * log_delta_[i] + specfun::log_cos_exp_shifted_moment(x, static_cast<unsigned>(q)) -
                                log_fact);
        conv_[i + 1].push_back(log_convolve_at(conv_[i], parts_[i + 1], q));
    }
    table_.push_back(conv_.back().back() + log_fact);
}

void AngularMomentTable::extend(std::size_t qmax) {
    while (table_.size() <= qmax) push_next();
}

SignedLog angular_moment_expanded(std::span<const double> deltas, double a, unsigned q) {
    const std::size_t n = deltas.size();
    if (n == 0) return {0.0, 1};

    // h[i][r] = Delta_i^r / r! * cos_exp_moment(a Delta_i, r) as a signed log
    std::vector<std::vector<SignedLog>> h(n, std::vector<SignedLog>(q + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (unsigned r = 0; r <= q; ++r) {
            const double x = a * deltas[i];
            if (deltas[i] == 0.0) {
                h[i][r] = r == 0 ? SignedLog{0.0, 1} : SignedLog{kNegInf, 1};
                continue;
            }
            const double lm = specfun::log_abs_cos_exp_moment(x, r);
            const int sign = (x < 0.0 && (r % 2U) == 1U) ? -1 : 1;
            h[i][r] = {r * std::log(deltas[i]) - specfun::ln_gamma(r + 1.0) + lm, sign};
        }
    }

    std::vector<SignedLog> terms;
    for (unsigned r = 0; r <= q; ++r) {
        // C(q, r) r! = q! / (q - r)!
        const double log_outer = specfun::ln_gamma(q + 1.0) - specfun::ln_gamma(q - r + 1.0);
        for_each_tuple(r, static_cast<unsigned>(n), [&](std::span<const unsigned> t) {
            SignedLog term{log_outer, 1};
            for (std::size_t i = 0; i < n; ++i) {
                term.log_abs += h[i][t[i]].log_abs;
                term.sign *= h[i][t[i]].sign;
            }
            if (term.log_abs != kNegInf) terms.push_back(term);
        });
    }
    return signed_log_sum(terms);
}

}  // namespace mtw
