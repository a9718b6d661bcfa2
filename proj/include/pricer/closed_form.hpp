#pragma once

#include "pricer/types.hpp"

namespace pricer {

/// American-premium constant Ψ. The generalized discount is
/// α = r - Ψ(1-r); consumption enters only through Ψ (c = Ψ·C).
struct PremiumParams {
    double psi = 0.0;

    double alpha(double rate) const { return rate - psi * (1.0 - rate); }
};

/// Bermudan premium constant δ.
struct BermudanParams {
    double delta = 0.0;
};

/// Distribution of the zero-mean perturbation factor ω.
struct OmegaSpec {
    enum class Kind { rademacher, uniform };
    Kind kind = Kind::rademacher;
    double half_width = 1.0;  // uniform on [-half_width, half_width]
};

/// Stochastic-volatility model inputs. Only β enters the closed form;
/// μ, λ and ω drive the path simulator.
struct StochVolParams {
    double beta = 0.0;   // volatility component, > 0
    double mu = 0.0;     // physical drift, per year
    double lambda = 0.0;
    OmegaSpec omega;
};

/// Every price in this library factors as premium_factor × base_price,
/// where the base is the equivalent European Black-Scholes value.
struct PriceResult {
    double price = 0.0;
    double premium_factor = 1.0;
    double base_price = 0.0;
};

PriceResult bs_call(const MarketState& market, const OptionContract& contract,
                    const Volatility& vol);
PriceResult bs_put(const MarketState& market, const OptionContract& contract,
                   const Volatility& vol);

/// American call: e^{Ψ(1-r)(T-t)} × C_BS.
PriceResult american_call(const MarketState& market, const OptionContract& contract,
                          const Volatility& vol, const PremiumParams& params);

/// American put: e^{Ψ(1-r)(T-t)} × P_BS.
PriceResult american_put(const MarketState& market, const OptionContract& contract,
                         const Volatility& vol, const PremiumParams& params);

/// Bermudan put: e^{δ(e^{r(T̂-t)}-1)(1-r)T} × P_BS.
///
/// The source formula uses the full horizon T (not T-t) in the discount,
/// the d-terms, and the exponent tail; the valuation time t appears only
/// inside e^{r(T̂-t)}. We evaluate it exactly as written, so the base put
/// is priced over the horizon T.
PriceResult bermudan_put(const MarketState& market, const OptionContract& contract,
                         const Volatility& vol, const BermudanParams& params);

/// Stochastic-volatility call: Black-Scholes functional form with the
/// volatility component β in place of σ. β is not the return volatility.
PriceResult stochvol_call(const MarketState& market, const OptionContract& contract,
                          const StochVolParams& params);

}  // namespace pricer
