#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pricer/closed_form.hpp"
#include "pricer/types.hpp"

namespace pricer {

struct TreeConfig {
    std::size_t n_steps = 1;
};

struct McConfig {
    std::size_t n_paths = 1;
    std::size_t n_steps = 1;
    std::uint64_t seed = 0;
    bool antithetic = false;

    void validate() const {
        if (n_paths < 1) throw DomainError("mc: n_paths must be >= 1");
        if (n_steps < 1) throw DomainError("mc: n_steps must be >= 1");
    }
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_effective = 0;
};

/// Monte Carlo result for the perturbed dynamics, with the per-step
/// singular-denominator rejection count and a zero-mean probe of the
/// perturbation term.
struct Eq6Estimate {
    McEstimate estimate;
    std::size_t rejected_steps = 0;
    std::size_t total_steps = 0;
    double perturbation_mean = 0.0;
    double perturbation_std_error = 0.0;
    bool rejection_warning = false;  // rejection rate above 1%
};

enum class Verdict { within_tolerance, outside_tolerance, report_only };

struct TolerancePolicy {
    enum class Kind { absolute, se_multiple, report_only };
    Kind kind = Kind::report_only;
    double value = 0.0;

    static TolerancePolicy absolute(double tol) { return {Kind::absolute, tol}; }
    static TolerancePolicy se_multiple(double k) { return {Kind::se_multiple, k}; }
    static TolerancePolicy report_only() { return {Kind::report_only, 0.0}; }
};

struct ComparisonReport {
    double closed_form_price = 0.0;
    double oracle_price = 0.0;
    double oracle_std_error = 0.0;
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    Verdict verdict = Verdict::report_only;
};

/// Cox-Ross-Rubinstein lattice price. u = e^{σ√Δt}, d = 1/u,
/// p = (e^{rΔt}-d)/(u-d); American nodes take max(continuation, payoff);
/// Bermudan nodes may exercise only at times ≥ T̂.
double crr_price(const MarketState& market, const OptionContract& contract,
                 const Volatility& vol, const TreeConfig& tree);

/// Risk-neutral GBM oracle with exact terminal sampling (no time stepping,
/// so the only error is statistical). Antithetic pairing when flagged.
McEstimate mc_gbm_price(const MarketState& market, const OptionContract& contract,
                        const Volatility& vol, const McConfig& mc);

/// Euler time-stepped GBM path for one substream; shares the Brownian
/// channel with eq6_path so the λ=0 limit matches step-for-step.
std::vector<double> gbm_path_stepped(const MarketState& market, double sigma,
                                     double horizon, std::size_t n_steps,
                                     std::uint64_t seed, std::uint64_t path_index);

/// One path of the perturbed dynamics under the risk-neutral drift:
/// ΔS = S(rΔt + βΔW)/(1 - λωX), X a √(dB) increment.
std::vector<double> eq6_path(const MarketState& market, const StochVolParams& params,
                             double horizon, std::size_t n_steps, std::uint64_t seed,
                             std::uint64_t path_index);

/// Price the contract by simulating the perturbed dynamics.
Eq6Estimate mc_eq6_price(const MarketState& market, const OptionContract& contract,
                         const StochVolParams& params, const McConfig& mc);

ComparisonReport compare(const PriceResult& closed_form,
                         const OptionContract& closed_form_contract, double oracle,
                         const OptionContract& oracle_contract,
                         const TolerancePolicy& policy);

ComparisonReport compare(const PriceResult& closed_form,
                         const OptionContract& closed_form_contract,
                         const McEstimate& oracle, const OptionContract& oracle_contract,
                         const TolerancePolicy& policy);

}  // namespace pricer
