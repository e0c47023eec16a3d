#ifndef MTW_COMBINATORICS_HPP
#define MTW_COMBINATORICS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mtw {

using Tuple = std::vector<unsigned>;

/// All n-tuples of nonnegative integers summing to r, in reverse
/// lexicographic order: (r, 0, ..., 0) first, (0, ..., 0, r) last.
/// The count is C(r + n - 1, n - 1).
std::vector<Tuple> tuples(unsigned r, unsigned n);

/// Visits the same tuples as tuples(r, n) without materializing them.
void for_each_tuple(unsigned r, unsigned n, const std::function<void(std::span<const unsigned>)>& visit);

/// Number of tuples in tau(r, n), C(r + n - 1, n - 1), as a double.
double tuple_count(unsigned r, unsigned n);

/// ln C(n, k).
double log_binomial(double n, double k);

}  // namespace mtw

#endif  // MTW_COMBINATORICS_HPP
