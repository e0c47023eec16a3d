#include "mtw/params.hpp"

#include <cmath>
#include <numeric>

#include "mtw/error.hpp"

namespace mtw {

double MtwParams::delta_sum() const { return std::accumulate(deltas.begin(), deltas.end(), 0.0); }

const MtwParams& validate(const MtwParams& params) {
    if (!std::isfinite(params.K) || !std::isfinite(params.mu) || !std::isfinite(params.mean_snr)) {
        throw ValidationError(ValidationCode::non_finite, "parameters must be finite");
    }
    if (params.K < 0.0) throw ValidationError(ValidationCode::negative_k, "K must be nonnegative");
    if (!(params.mu > 0.0)) throw ValidationError(ValidationCode::nonpositive_mu, "mu must be positive");
    if (!(params.mean_snr > 0.0)) {
        throw ValidationError(ValidationCode::nonpositive_mean_snr, "mean SNR must be positive");
    }
    for (double d : params.deltas) {
        if (!std::isfinite(d)) throw ValidationError(ValidationCode::non_finite, "delta must be finite");
        if (d < 0.0 || d > 1.0) {
            throw ValidationError(ValidationCode::delta_out_of_range, "each delta must lie in [0, 1]");
        }
    }
    // Allow a few ulps so that e.g. {0.3, 0.7} passes.
    if (params.delta_sum() > 1.0 + 4.0 * 2.220446049250313e-16 * static_cast<double>(params.deltas.size())) {
        throw ValidationError(ValidationCode::delta_sum_exceeds_one, "sum of delta exceeds 1");
    }
    return params;
}

void validate(const NumericPolicy& policy) {
    if (policy.quad_nodes_per_dim < 8) {
        throw ValidationError(ValidationCode::invalid_policy, "quad_nodes_per_dim must be >= 8");
    }
    if (policy.series_kmax < 1) throw ValidationError(ValidationCode::invalid_policy, "series_kmax must be >= 1");
    if (!(policy.series_rel_tol > 0.0) || !(policy.series_rel_tol < 1.0)) {
        throw ValidationError(ValidationCode::invalid_policy, "series_rel_tol must lie in (0, 1)");
    }
}

bool physically_consistent(const MtwParams& params) {
    return static_cast<double>(params.deltas.size()) <= std::ceil(params.mu);
}

Method parse_method(const std::string& name) {
    if (name == "auto") return Method::automatic;
    if (name == "integral") return Method::integral;
    if (name == "series") return Method::series;
    throw ValidationError(ValidationCode::invalid_argument, "unknown method '" + name + "'");
}

std::string to_string(Method method) {
    switch (method) {
        case Method::automatic: return "auto";
        case Method::integral: return "integral";
        case Method::series: return "series";
    }
    return "auto";
}

}  // namespace mtw
