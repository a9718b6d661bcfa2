#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pricer/types.hpp"

namespace pricer {

/// Configuration for one increment stream of the square-root-of-Brownian-
/// motion process. `stream` selects an independent substream of the same
/// master seed (used per path by the Monte Carlo engines).
struct SqrtBmConfig {
    double dt = 0.0;
    std::size_t n_steps = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    void validate() const {
        if (!(dt > 0.0)) throw DomainError("sqrtbm: dt must be > 0");
        if (n_steps < 1) throw DomainError("sqrtbm: n_steps must be >= 1");
    }
};

/// Increments X_k = ζ_k·|ΔB_k|^{1/2} with the underlying Gaussian ΔB_k.
/// Construction identity: X_k² = |ΔB_k| for every k.
struct IncrementSample {
    std::vector<double> values;
    std::vector<double> gaussian;
};

/// One row of the second-moment scaling table: E[X²] should track √(2dt/π),
/// the folded-normal mean of |ΔB|.
struct ScalingRow {
    double dt = 0.0;
    double second_moment = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

/// Draw ΔB_k ~ N(0, dt) and an independent Rademacher sign ζ_k, and emit
/// X_k = ζ_k·|ΔB_k|^{1/2}. Bit-identical output for identical config.
IncrementSample sqrtbm_increments(const SqrtBmConfig& config);

/// Partial sums of the increments; path[0] = 0, size n_steps + 1.
std::vector<double> sqrtbm_path(const SqrtBmConfig& config);

/// Monte Carlo estimate of the per-step second moment for each dt, using
/// config.n_steps samples per entry.
std::vector<ScalingRow> scaling_diagnostic(const SqrtBmConfig& config,
                                           std::span<const double> dt_list);

}  // namespace pricer
