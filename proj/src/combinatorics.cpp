#include "mtw/combinatorics.hpp"

#include <cmath>

#include "mtw/error.hpp"
#include "mtw/specfun.hpp"

namespace mtw {

namespace {

void visit_rec(unsigned remaining, unsigned pos, std::vector<unsigned>& cur,
               const std::function<void(std::span<const unsigned>)>& visit) {
    if (pos + 1 == cur.size()) {
        cur[pos] = remaining;
        visit(cur);
        return;
    }
    for (unsigned v = remaining + 1; v-- > 0;) {
        cur[pos] = v;
        visit_rec(remaining - v, pos + 1, cur, visit);
    }
}

}  // namespace

void for_each_tuple(unsigned r, unsigned n, const std::function<void(std::span<const unsigned>)>& visit) {
    if (n == 0) throw DomainError("tuples: n must be >= 1");
    std::vector<unsigned> cur(n, 0U);
    visit_rec(r, 0, cur, visit);
}

std::vector<Tuple> tuples(unsigned r, unsigned n) {
    std::vector<Tuple> out;
    for_each_tuple(r, n, [&](std::span<const unsigned> t) { out.emplace_back(t.begin(), t.end()); });
    return out;
}

double tuple_count(unsigned r, unsigned n) {
    if (n == 0) throw DomainError("tuples: n must be >= 1");
    return std::round(std::exp(log_binomial(r + n - 1.0, n - 1.0)));
}

double log_binomial(double n, double k) {
    if (k < 0.0 || k > n) throw DomainError("log_binomial: k outside [0, n]");
    if (k == 0.0 || k == n) return 0.0;
    return specfun::ln_gamma(n + 1.0) - specfun::ln_gamma(k + 1.0) - specfun::ln_gamma(n - k + 1.0);
}

}  // namespace mtw
