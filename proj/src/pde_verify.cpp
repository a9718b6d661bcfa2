#include "pricer/pde_verify.hpp"

#include <cmath>

#include "pricer/math.hpp"

namespace pricer {

namespace {

struct Partials {
    double dt;
    double ds;
    double d2s;
};

Partials evaluate_partials(const PriceSurface& surface, double t, double s,
                           const FdSteps& steps) {
    if (surface.has_analytic_partials())
        return {surface.dt(t, s), surface.ds(t, s), surface.d2s(t, s)};
    const double hs = steps.h_s_rel * s;
    const double ht = steps.h_t;
    const auto& f = surface.value;
    const double up = f(t, s + hs);
    const double mid = f(t, s);
    const double dn = f(t, s - hs);
    return {
        (f(t + ht, s) - f(t - ht, s)) / (2.0 * ht),
        (up - dn) / (2.0 * hs),
        (up - 2.0 * mid + dn) / (hs * hs),
    };
}

void check_node(const PriceSurface& surface, double t, double s) {
    if (!(s > 0.0)) throw DomainError("pde residual: S must be > 0");
    if (!(t < surface.maturity))
        throw DomainError("pde residual: t must lie strictly below maturity");
}

}  // namespace

double pde_residual_eq2(const PriceSurface& surface, const PdeCoefficients& coeffs,
                        double t, double s, const FdSteps& steps) {
    check_node(surface, t, s);
    const auto p = evaluate_partials(surface, t, s, steps);
    const double c = surface.value(t, s);
    return p.dt + coeffs.rate * s * p.ds +
           0.5 * coeffs.sigma * coeffs.sigma * s * s * p.d2s - coeffs.alpha * c;
}

double pde_residual_eq1(const PriceSurface& surface, const PdeCoefficients& coeffs,
                        const std::function<double(double)>& consumption_rule,
                        double t, double s, const FdSteps& steps) {
    check_node(surface, t, s);
    if (!consumption_rule) throw DomainError("pde residual: consumption rule missing");
    const auto p = evaluate_partials(surface, t, s, steps);
    const double c = surface.value(t, s);
    const double r = coeffs.rate;
    return p.dt + r * (s * p.ds - c) + 0.5 * coeffs.sigma * coeffs.sigma * s * s * p.d2s +
           (1.0 - r) * consumption_rule(c);
}

ResidualReport residual_scan(const PriceSurface& surface, const PdeCoefficients& coeffs,
                             const GridSpec& grid, const FdSteps& steps) {
    if (grid.n_s < 2 || grid.n_t < 2)
        throw DomainError("residual_scan: grid needs at least 2 points per axis");
    if (!(grid.s_min > 0.0) || !(grid.s_max > grid.s_min))
        throw DomainError("residual_scan: invalid S bounds");
    if (!(grid.t_max >= grid.t_min))
        throw DomainError("residual_scan: invalid t bounds");
    if (!(grid.t_max < surface.maturity))
        throw DomainError("residual_scan: t_max must lie below maturity");

    ResidualReport report;
    report.n_t = grid.n_t;
    report.n_s = grid.n_s;
    report.values.resize(grid.n_t * grid.n_s);

    const double dt_step = (grid.t_max - grid.t_min) / double(grid.n_t - 1);
    const double ds_step = (grid.s_max - grid.s_min) / double(grid.n_s - 1);

    double sum_abs = 0.0;
    for (std::size_t i = 0; i < grid.n_t; ++i) {
        const double t = grid.t_min + double(i) * dt_step;
        for (std::size_t j = 0; j < grid.n_s; ++j) {
            const double s = grid.s_min + double(j) * ds_step;
            const double res = pde_residual_eq2(surface, coeffs, t, s, steps);
            report.values[i * grid.n_s + j] = res;
            const double a = std::abs(res);
            sum_abs += a;
            if (a > report.max_abs) {
                report.max_abs = a;
                report.argmax_t = t;
                report.argmax_s = s;
            }
        }
    }
    report.mean_abs = sum_abs / double(report.values.size());
    return report;
}

PriceSurface make_premium_surface(OptionKind kind, double strike, double maturity,
                                  double rate, double sigma, double psi) {
    if (!(strike > 0.0) || !(sigma > 0.0))
        throw DomainError("make_premium_surface: strike and sigma must be > 0");

    const double psi_term = psi * (1.0 - rate);
    auto factor = [psi_term, maturity](double t) {
        return std::exp(psi_term * (maturity - t));
    };

    auto bs_terms = [=](double t, double s) {
        const double tau = maturity - t;
        const auto [d1, d2] = d1_d2(s, strike, rate, sigma, tau);
        const double disc = std::exp(-rate * tau);
        return std::tuple{tau, d1, d2, disc};
    };

    PriceSurface surface;
    surface.maturity = maturity;

    surface.value = [=](double t, double s) {
        const auto [tau, d1, d2, disc] = bs_terms(t, s);
        const double base = kind == OptionKind::call
                                ? s * norm_cdf(d1) - strike * disc * norm_cdf(d2)
                                : strike * disc * norm_cdf(-d2) - s * norm_cdf(-d1);
        return factor(t) * base;
    };
    surface.ds = [=](double t, double s) {
        const auto [tau, d1, d2, disc] = bs_terms(t, s);
        const double delta = kind == OptionKind::call ? norm_cdf(d1) : norm_cdf(d1) - 1.0;
        return factor(t) * delta;
    };
    surface.d2s = [=](double t, double s) {
        const auto [tau, d1, d2, disc] = bs_terms(t, s);
        return factor(t) * norm_pdf(d1) / (s * sigma * std::sqrt(tau));
    };
    surface.dt = [=](double t, double s) {
        const auto [tau, d1, d2, disc] = bs_terms(t, s);
        const double decay = -s * norm_pdf(d1) * sigma / (2.0 * std::sqrt(tau));
        double theta;
        double base;
        if (kind == OptionKind::call) {
            theta = decay - rate * strike * disc * norm_cdf(d2);
            base = s * norm_cdf(d1) - strike * disc * norm_cdf(d2);
        } else {
            theta = decay + rate * strike * disc * norm_cdf(-d2);
            base = strike * disc * norm_cdf(-d2) - s * norm_cdf(-d1);
        }
        // d/dt [F(t)·BS(t,S)] with F' = -Ψ(1-r)F
        return factor(t) * (theta - psi_term * base);
    };
    return surface;
}

PriceSurface make_payoff_surface(OptionKind kind, double strike, double maturity) {
    PriceSurface surface;
    surface.maturity = maturity;
    surface.value = [kind, strike](double, double s) {
        return kind == OptionKind::call ? std::max(s - strike, 0.0)
                                        : std::max(strike - s, 0.0);
    };
    return surface;
}

}  // namespace pricer
