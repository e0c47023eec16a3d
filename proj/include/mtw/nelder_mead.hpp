#ifndef MTW_NELDER_MEAD_HPP
#define MTW_NELDER_MEAD_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mtw {

struct NelderMeadOptions {
    double diameter_tol = 1e-6;  ///< stop once every vertex is this close to the best one
    std::size_t max_evaluations = 2000;  ///< never exceeded
    double initial_step = 0.5;
};

struct NelderMeadResult {
    std::vector<double> x;
    double fx = 0.0;
    std::size_t evaluations = 0;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> trace;  ///< best value after each iteration
};

/// Downhill simplex with the standard coefficients (reflection 1,
/// expansion 2, contraction 1/2, shrink 1/2). Non-finite objective values
/// are treated as +inf.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             const NelderMeadOptions& options = {});

}  // namespace mtw

#endif  // MTW_NELDER_MEAD_HPP
