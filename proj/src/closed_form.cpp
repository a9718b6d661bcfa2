#include "pricer/closed_form.hpp"

#include <cmath>

#include "pricer/math.hpp"

namespace pricer {

namespace {

void validate_common(const MarketState& market, const OptionContract& contract,
                     const Volatility& vol) {
    market.validate();
    contract.validate();
    vol.validate();
    if (market.now > contract.maturity)
        throw DomainError("valuation time past maturity");
}

// European price with the dedicated τ=0 / σ=0 limit branches.
double european_price(OptionKind kind, double spot, double strike, double rate,
                      double sigma, double tau) {
    if (tau == 0.0) {
        return kind == OptionKind::call ? std::max(spot - strike, 0.0)
                                        : std::max(strike - spot, 0.0);
    }
    const double disc = std::exp(-rate * tau);
    if (sigma == 0.0) {
        // deterministic forward, discounted intrinsic
        return kind == OptionKind::call ? std::max(spot - strike * disc, 0.0)
                                        : std::max(strike * disc - spot, 0.0);
    }
    const auto [d1, d2] = d1_d2(spot, strike, rate, sigma, tau);
    if (kind == OptionKind::call)
        return spot * norm_cdf(d1) - strike * disc * norm_cdf(d2);
    return strike * disc * norm_cdf(-d2) - spot * norm_cdf(-d1);
}

PriceResult with_factor(double factor, double base) {
    return PriceResult{factor * base, factor, base};
}

}  // namespace

PriceResult bs_call(const MarketState& market, const OptionContract& contract,
                    const Volatility& vol) {
    validate_common(market, contract, vol);
    if (contract.kind != OptionKind::call)
        throw DomainError("bs_call: contract is not a call");
    const double tau = contract.maturity - market.now;
    return with_factor(1.0, european_price(OptionKind::call, market.spot,
                                           contract.strike, market.rate,
                                           vol.sigma, tau));
}

PriceResult bs_put(const MarketState& market, const OptionContract& contract,
                   const Volatility& vol) {
    validate_common(market, contract, vol);
    if (contract.kind != OptionKind::put)
        throw DomainError("bs_put: contract is not a put");
    const double tau = contract.maturity - market.now;
    return with_factor(1.0, european_price(OptionKind::put, market.spot,
                                           contract.strike, market.rate,
                                           vol.sigma, tau));
}

PriceResult american_call(const MarketState& market, const OptionContract& contract,
                          const Volatility& vol, const PremiumParams& params) {
    validate_common(market, contract, vol);
    if (contract.kind != OptionKind::call)
        throw DomainError("american_call: contract is not a call");
    if (contract.style != ExerciseStyle::american)
        throw DomainError("american_call: contract style is not american");
    const double tau = contract.maturity - market.now;
    const double factor = std::exp(params.psi * (1.0 - market.rate) * tau);
    return with_factor(factor,
                       european_price(OptionKind::call, market.spot, contract.strike,
                                      market.rate, vol.sigma, tau));
}

PriceResult american_put(const MarketState& market, const OptionContract& contract,
                         const Volatility& vol, const PremiumParams& params) {
    validate_common(market, contract, vol);
    if (contract.kind != OptionKind::put)
        throw DomainError("american_put: contract is not a put");
    if (contract.style != ExerciseStyle::american)
        throw DomainError("american_put: contract style is not american");
    const double tau = contract.maturity - market.now;
    const double factor = std::exp(params.psi * (1.0 - market.rate) * tau);
    return with_factor(factor,
                       european_price(OptionKind::put, market.spot, contract.strike,
                                      market.rate, vol.sigma, tau));
}

PriceResult bermudan_put(const MarketState& market, const OptionContract& contract,
                         const Volatility& vol, const BermudanParams& params) {
    validate_common(market, contract, vol);
    if (contract.kind != OptionKind::put)
        throw DomainError("bermudan_put: contract is not a put");
    if (contract.style != ExerciseStyle::bermudan)
        throw DomainError("bermudan_put: contract style is not bermudan");
    if (!std::isfinite(params.delta))
        throw DomainError("bermudan_put: delta must be finite");
    if (contract.first_exercise < market.now ||
        contract.first_exercise > contract.maturity)
        throw DomainError("bermudan_put: first_exercise outside [t, T]");

    const double t_total = contract.maturity;  // horizon as printed, not T-t
    const double r = market.rate;
    const double factor = std::exp(
        params.delta * (std::exp(r * (contract.first_exercise - market.now)) - 1.0) *
        (1.0 - r) * t_total);
    return with_factor(factor,
                       european_price(OptionKind::put, market.spot, contract.strike,
                                      r, vol.sigma, t_total));
}

PriceResult stochvol_call(const MarketState& market, const OptionContract& contract,
                          const StochVolParams& params) {
    market.validate();
    contract.validate();
    if (contract.kind != OptionKind::call)
        throw DomainError("stochvol_call: contract is not a call");
    if (market.now > contract.maturity)
        throw DomainError("valuation time past maturity");
    if (!(params.beta > 0.0))
        throw DomainError("stochvol_call: beta must be > 0");
    const double tau = contract.maturity - market.now;
    return with_factor(1.0, european_price(OptionKind::call, market.spot,
                                           contract.strike, market.rate,
                                           params.beta, tau));
}

}  // namespace pricer
