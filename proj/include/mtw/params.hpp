#ifndef MTW_PARAMS_HPP
#define MTW_PARAMS_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace mtw {

/// Channel parameters of the multi-cluster two-wave model.
struct MtwParams {
    double K = 0.0;              ///< specular-to-diffuse power ratio
    std::vector<double> deltas;  ///< per-cluster specular asymmetry, one entry per two-wave cluster
    double mu = 1.0;             ///< number of clusters; real-valued when fitting
    double mean_snr = 1.0;       ///< average SNR

    std::size_t n_two_wave() const { return deltas.size(); }
    double delta_sum() const;
};

/// Tolerances and sizes for the numerical evaluation routes.
struct NumericPolicy {
    std::size_t quad_nodes_per_dim = 64;
    std::size_t series_kmax = 1000;  ///< hard cap on mixture terms; truncation is by tail mass
    double series_rel_tol = 1e-12;   ///< stop once the Gamma-mixture tail mass is below this
    std::size_t max_integral_dim = 4;
};

enum class Method { automatic, integral, series };

/// Returns the parameters unchanged if they satisfy every model invariant,
/// otherwise throws ValidationError naming the violated constraint.
const MtwParams& validate(const MtwParams& params);

void validate(const NumericPolicy& policy);

/// False when the set has more two-wave clusters than ceil(mu). The analytic
/// formulas still evaluate, but no physical configuration realizes it.
bool physically_consistent(const MtwParams& params);

Method parse_method(const std::string& name);
std::string to_string(Method method);

}  // namespace mtw

#endif  // MTW_PARAMS_HPP
