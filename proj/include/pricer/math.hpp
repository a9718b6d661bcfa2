#pragma once

#include <cmath>
#include <utility>

#include "pricer/types.hpp"

namespace pricer {

/// Standard normal density φ(x) = exp(-x²/2)/√(2π).
inline double norm_pdf(double x) {
    if (!std::isfinite(x)) throw DomainError("norm_pdf: non-finite input");
    constexpr double inv_sqrt_2pi = 0.3989422804014326779399461;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

/// Standard normal CDF via erfc; absolute error well under 1e-12 everywhere.
inline double norm_cdf(double x) {
    if (!std::isfinite(x)) throw DomainError("norm_cdf: non-finite input");
    constexpr double inv_sqrt2 = 0.7071067811865475244008444;
    return 0.5 * std::erfc(-x * inv_sqrt2);
}

/// Terminal payoff g(S): call → (S-K)⁺, put → (K-S)⁺.
inline double payoff(const OptionContract& contract, double spot) {
    if (!(spot > 0.0)) throw DomainError("payoff: spot must be > 0");
    const double k = contract.strike;
    return contract.kind == OptionKind::call ? std::max(spot - k, 0.0)
                                             : std::max(k - spot, 0.0);
}

/// d1 = [ln(S/K) + (r + σ²/2)τ] / (σ√τ),  d2 = d1 - σ√τ.
/// τ ≤ 0 and σ ≤ 0 are rejected; callers own those limit branches.
inline std::pair<double, double> d1_d2(double spot, double strike, double rate,
                                       double sigma, double tau) {
    if (!(spot > 0.0) || !(strike > 0.0))
        throw DomainError("d1_d2: spot and strike must be > 0");
    if (!(tau > 0.0) || !(sigma > 0.0))
        throw DomainError("d1_d2: degenerate input (tau <= 0 or sigma <= 0)");
    const double sig_sqrt_tau = sigma * std::sqrt(tau);
    const double d1 =
        (std::log(spot / strike) + (rate + 0.5 * sigma * sigma) * tau) / sig_sqrt_tau;
    return {d1, d1 - sig_sqrt_tau};
}

}  // namespace pricer
