#ifndef MTW_ERROR_HPP
#define MTW_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mtw {

/// Argument outside the mathematical domain of a function (e.g. a <= 0 in P(a, x)).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure could not reach its tolerance (series cap hit,
/// pole proximity, combinatorial guard).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ValidationCode {
    negative_k,
    nonpositive_mu,
    nonpositive_mean_snr,
    delta_out_of_range,
    delta_sum_exceeds_one,
    non_finite,
    invalid_policy,
    invalid_argument,
};

class ValidationError : public std::invalid_argument {
public:
    ValidationError(ValidationCode code, const std::string& what)
        : std::invalid_argument(what), code_(code) {}

    ValidationCode code() const noexcept { return code_; }

private:
    ValidationCode code_;
};

}  // namespace mtw

#endif  // MTW_ERROR_HPP
