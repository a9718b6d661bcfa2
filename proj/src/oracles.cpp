#include "pricer/oracles.hpp"

#include <cmath>

#include "pricer/math.hpp"
#include "pricer/rng.hpp"

namespace pricer {

namespace {

// Substream channels per path.
constexpr std::uint64_t kChannelBrownian = 0;
constexpr std::uint64_t kChannelOmega = 1;
constexpr std::uint64_t kChannelSqrtBmGauss = 2;
constexpr std::uint64_t kChannelSqrtBmSign = 3;

constexpr double kDenomGuard = 1e-6;

double draw_omega(const OmegaSpec& spec, RandomStream& stream) {
    switch (spec.kind) {
        case OmegaSpec::Kind::rademacher:
            return stream.rademacher();
        case OmegaSpec::Kind::uniform:
            return stream.uniform(-spec.half_width, spec.half_width);
    }
    throw DomainError("unknown omega distribution");
}

struct Accumulator {
    double sum = 0.0;
    double comp = 0.0;  // Kahan carry
    double sum_sq = 0.0;
    double comp_sq = 0.0;
    std::size_t n = 0;

    void add(double x) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        double y2 = x * x - comp_sq;
        double t2 = sum_sq + y2;
        comp_sq = (t2 - sum_sq) - y2;
        sum_sq = t2;
        ++n;
    }

    McEstimate estimate() const {
        const double nn = double(n);
        const double mean = sum / nn;
        double se = 0.0;
        if (n > 1) {
            const double var = std::max((sum_sq - nn * mean * mean) / (nn - 1.0), 0.0);
            se = std::sqrt(var / nn);
        }
        return {mean, se, n};
    }
};

}  // namespace

double crr_price(const MarketState& market, const OptionContract& contract,
                 const Volatility& vol, const TreeConfig& tree) {
    market.validate();
    contract.validate();
    if (!(vol.sigma > 0.0)) throw DomainError("crr_price: sigma must be > 0");
    if (tree.n_steps < 1) throw DomainError("crr_price: n_steps must be >= 1");
    if (market.now > contract.maturity)
        throw DomainError("crr_price: valuation time past maturity");

    const double tau = contract.maturity - market.now;
    const std::size_t n = tree.n_steps;
    const double dt = tau / double(n);
    const double u = std::exp(vol.sigma * std::sqrt(dt));
    const double d = 1.0 / u;
    const double growth = std::exp(market.rate * dt);
    const double p = (growth - d) / (u - d);
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("crr_price: risk-neutral probability outside (0,1); "
                          "tree too coarse for these parameters");
    const double disc = std::exp(-market.rate * dt);

    // terminal layer
    std::vector<double> values(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        const double s = market.spot * std::pow(u, double(j)) * std::pow(d, double(n - j));
        values[j] = payoff(contract, s);
    }

    for (std::size_t step = n; step-- > 0;) {
        const double node_time = market.now + double(step) * dt;
        const bool may_exercise =
            contract.style == ExerciseStyle::american ||
            (contract.style == ExerciseStyle::bermudan &&
             node_time >= contract.first_exercise);
        for (std::size_t j = 0; j <= step; ++j) {
            double cont = disc * (p * values[j + 1] + (1.0 - p) * values[j]);
            if (may_exercise) {
                const double s =
                    market.spot * std::pow(u, double(j)) * std::pow(d, double(step - j));
                cont = std::max(cont, payoff(contract, s));
            }
            values[j] = cont;
        }
    }
    return values[0];
}

McEstimate mc_gbm_price(const MarketState& market, const OptionContract& contract,
                        const Volatility& vol, const McConfig& mc) {
    market.validate();
    contract.validate();
    vol.validate();
    mc.validate();
    if (market.now > contract.maturity)
        throw DomainError("mc_gbm_price: valuation time past maturity");

    const double tau = contract.maturity - market.now;
    const double disc = std::exp(-market.rate * tau);

    if (vol.sigma == 0.0 || tau == 0.0) {
        const double st = market.spot * std::exp(market.rate * tau);
        return {disc * payoff(contract, st), 0.0, mc.n_paths};
    }

    const double drift = (market.rate - 0.5 * vol.sigma * vol.sigma) * tau;
    const double shock = vol.sigma * std::sqrt(tau);

    Accumulator acc;
    for (std::size_t i = 0; i < mc.n_paths; ++i) {
        RandomStream stream(substream_seed(mc.seed, i, kChannelBrownian));
        const double z = stream.normal();
        const double v1 =
            disc * payoff(contract, market.spot * std::exp(drift + shock * z));
        if (mc.antithetic) {
            const double v2 =
                disc * payoff(contract, market.spot * std::exp(drift - shock * z));
            acc.add(0.5 * (v1 + v2));
        } else {
            acc.add(v1);
        }
    }
    return acc.estimate();
}

std::vector<double> gbm_path_stepped(const MarketState& market, double sigma,
                                     double horizon, std::size_t n_steps,
                                     std::uint64_t seed, std::uint64_t path_index) {
    market.validate();
    if (!(horizon > 0.0)) throw DomainError("gbm_path_stepped: horizon must be > 0");
    if (n_steps < 1) throw DomainError("gbm_path_stepped: n_steps must be >= 1");

    const double dt = horizon / double(n_steps);
    const double sqrt_dt = std::sqrt(dt);
    RandomStream brownian(substream_seed(seed, path_index, kChannelBrownian));

    std::vector<double> path;
    path.reserve(n_steps + 1);
    double s = market.spot;
    path.push_back(s);
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double dw = sqrt_dt * brownian.normal();
        s += s * (market.rate * dt + sigma * dw);
        path.push_back(s);
    }
    return path;
}

namespace {

struct Eq6PathResult {
    std::vector<double> path;
    std::size_t rejected = 0;
    double perturbation_sum = 0.0;
    double perturbation_sum_sq = 0.0;
};

Eq6PathResult simulate_eq6_path(const MarketState& market, const StochVolParams& params,
                                double horizon, std::size_t n_steps, std::uint64_t seed,
                                std::uint64_t path_index) {
    const double dt = horizon / double(n_steps);
    const double sqrt_dt = std::sqrt(dt);
    RandomStream brownian(substream_seed(seed, path_index, kChannelBrownian));
    RandomStream omega(substream_seed(seed, path_index, kChannelOmega));
    RandomStream sq_gauss(substream_seed(seed, path_index, kChannelSqrtBmGauss));
    RandomStream sq_sign(substream_seed(seed, path_index, kChannelSqrtBmSign));

    Eq6PathResult out;
    out.path.reserve(n_steps + 1);
    double s = market.spot;
    out.path.push_back(s);
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double dw = sqrt_dt * brownian.normal();
        double w = draw_omega(params.omega, omega);
        double db = sqrt_dt * sq_gauss.normal();
        double x = sq_sign.rademacher() * std::sqrt(std::abs(db));
        double denom = 1.0 - params.lambda * w * x;
        while (std::abs(denom) < kDenomGuard) {
            ++out.rejected;
            w = draw_omega(params.omega, omega);
            db = sqrt_dt * sq_gauss.normal();
            x = sq_sign.rademacher() * std::sqrt(std::abs(db));
            denom = 1.0 - params.lambda * w * x;
        }
        const double perturbation = params.lambda * w * x;
        out.perturbation_sum += perturbation;
        out.perturbation_sum_sq += perturbation * perturbation;
        // unique per-step solution of dS = S(r dt + β dW) + dS·λω√(dB)
        const double ds = s * (market.rate * dt + params.beta * dw) / denom;
        s += ds;
        out.path.push_back(s);
    }
    return out;
}

}  // namespace

std::vector<double> eq6_path(const MarketState& market, const StochVolParams& params,
                             double horizon, std::size_t n_steps, std::uint64_t seed,
                             std::uint64_t path_index) {
    market.validate();
    if (!(params.beta > 0.0)) throw DomainError("eq6_path: beta must be > 0");
    if (!(horizon > 0.0)) throw DomainError("eq6_path: horizon must be > 0");
    if (n_steps < 1) throw DomainError("eq6_path: n_steps must be >= 1");
    return simulate_eq6_path(market, params, horizon, n_steps, seed, path_index).path;
}

Eq6Estimate mc_eq6_price(const MarketState& market, const OptionContract& contract,
                         const StochVolParams& params, const McConfig& mc) {
    market.validate();
    contract.validate();
    mc.validate();
    if (!(params.beta > 0.0)) throw DomainError("mc_eq6_price: beta must be > 0");
    if (market.now >= contract.maturity)
        throw DomainError("mc_eq6_price: needs a positive time horizon");

    const double tau = contract.maturity - market.now;
    const double disc = std::exp(-market.rate * tau);

    Accumulator acc;
    Eq6Estimate result;
    double pert_sum = 0.0;
    double pert_sum_sq = 0.0;
    for (std::size_t i = 0; i < mc.n_paths; ++i) {
        const Eq6PathResult sim =
            simulate_eq6_path(market, params, tau, mc.n_steps, mc.seed, i);
        const double terminal = sim.path.back();
        // Euler steps can cross zero; such paths are worthless for a call
        // and intrinsic-capped for a put, so clamp before the payoff.
        const double value = terminal > 0.0 ? disc * payoff(contract, terminal)
                                            : (contract.kind == OptionKind::put
                                                   ? disc * contract.strike
                                                   : 0.0);
        acc.add(value);
        result.rejected_steps += sim.rejected;
        pert_sum += sim.perturbation_sum;
        pert_sum_sq += sim.perturbation_sum_sq;
    }
    result.estimate = acc.estimate();
    result.total_steps = mc.n_paths * mc.n_steps;
    const double n = double(result.total_steps);
    result.perturbation_mean = pert_sum / n;
    const double var =
        std::max(pert_sum_sq / n - result.perturbation_mean * result.perturbation_mean, 0.0);
    result.perturbation_std_error = std::sqrt(var / n);
    result.rejection_warning =
        double(result.rejected_steps) > 0.01 * double(result.total_steps);
    return result;
}

namespace {

void check_same_contract(const OptionContract& a, const OptionContract& b) {
    if (a.strike != b.strike || a.maturity != b.maturity || a.kind != b.kind)
        throw DomainError("compare: contracts do not match");
}

ComparisonReport build_report(const PriceResult& closed_form, double oracle,
                              double oracle_se, const TolerancePolicy& policy) {
    ComparisonReport report;
    report.closed_form_price = closed_form.price;
    report.oracle_price = oracle;
    report.oracle_std_error = oracle_se;
    report.abs_diff = std::abs(closed_form.price - oracle);
    const double scale = std::max(std::abs(closed_form.price), std::abs(oracle));
    report.rel_diff = scale > 0.0 ? report.abs_diff / scale : 0.0;
    switch (policy.kind) {
        case TolerancePolicy::Kind::absolute:
            report.verdict = report.abs_diff <= policy.value ? Verdict::within_tolerance
                                                             : Verdict::outside_tolerance;
            break;
        case TolerancePolicy::Kind::se_multiple:
            report.verdict = report.abs_diff <= policy.value * oracle_se
                                 ? Verdict::within_tolerance
                                 : Verdict::outside_tolerance;
            break;
        case TolerancePolicy::Kind::report_only:
            report.verdict = Verdict::report_only;
            break;
    }
    return report;
}

}  // namespace

ComparisonReport compare(const PriceResult& closed_form,
                         const OptionContract& closed_form_contract, double oracle,
                         const OptionContract& oracle_contract,
                         const TolerancePolicy& policy) {
    check_same_contract(closed_form_contract, oracle_contract);
    return build_report(closed_form, oracle, 0.0, policy);
}

ComparisonReport compare(const PriceResult& closed_form,
                         const OptionContract& closed_form_contract,
                         const McEstimate& oracle, const OptionContract& oracle_contract,
                         const TolerancePolicy& policy) {
    check_same_contract(closed_form_contract, oracle_contract);
    return build_report(closed_form, oracle.mean, oracle.std_error, policy);
}

}  // namespace pricer
