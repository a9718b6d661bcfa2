#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "pricer/types.hpp"

namespace pricer {

/// Coefficients of the generalized pricing PDE
///   C_t + r S C_S + ½σ²S² C_SS - α C = 0,
/// with α = r - Ψ(1-r). Populate either α directly or Ψ.
struct PdeCoefficients {
    double rate = 0.0;
    double sigma = 0.0;
    double alpha = 0.0;

    static PdeCoefficients from_psi(double rate, double sigma, double psi) {
        return {rate, sigma, rate - psi * (1.0 - rate)};
    }
};

/// Candidate price function C(t, S). Analytic partials are optional;
/// when absent the residual operators fall back to central differences.
struct PriceSurface {
    std::function<double(double t, double s)> value;
    std::function<double(double t, double s)> dt;    // ∂C/∂t, optional
    std::function<double(double t, double s)> ds;    // ∂C/∂S, optional
    std::function<double(double t, double s)> d2s;   // ∂²C/∂S², optional
    double maturity = 0.0;

    bool has_analytic_partials() const {
        return static_cast<bool>(dt) && static_cast<bool>(ds) && static_cast<bool>(d2s);
    }
};

/// Central-difference steps: relative in S, absolute in t (years).
struct FdSteps {
    double h_s_rel = 1e-4;
    double h_t = 1e-6;
};

/// Uniform (t, S) evaluation grid; t_max must stay below maturity so all
/// time derivatives are interior.
struct GridSpec {
    double s_min = 0.0;
    double s_max = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    std::size_t n_s = 0;
    std::size_t n_t = 0;
};

struct ResidualReport {
    std::vector<double> values;  // row-major, t outer, S inner
    std::size_t n_t = 0;
    std::size_t n_s = 0;
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double argmax_t = 0.0;
    double argmax_s = 0.0;
};

/// Residual of C_t + rSC_S + ½σ²S²C_SS - αC at one node.
double pde_residual_eq2(const PriceSurface& surface, const PdeCoefficients& coeffs,
                        double t, double s, const FdSteps& steps = {});

/// Residual of C_t + r(SC_S - C) + ½σ²S²C_SS + (1-r)c, with the
/// consumption rule c = c(C). Defaults to c = Ψ·C via make_psi_consumption.
double pde_residual_eq1(const PriceSurface& surface, const PdeCoefficients& coeffs,
                        const std::function<double(double)>& consumption_rule,
                        double t, double s, const FdSteps& steps = {});

inline std::function<double(double)> make_psi_consumption(double psi) {
    return [psi](double c) { return psi * c; };
}

/// Sweep pde_residual_eq2 over the grid.
ResidualReport residual_scan(const PriceSurface& surface, const PdeCoefficients& coeffs,
                             const GridSpec& grid, const FdSteps& steps = {});

/// Closed-form price surface e^{Ψ(1-r)(T-t)} × BS(t,S) with analytic
/// delta/gamma/theta, for machine-precision residual checks. Ψ=0 gives
/// the plain Black-Scholes surface.
PriceSurface make_premium_surface(OptionKind kind, double strike, double maturity,
                                  double rate, double sigma, double psi);

/// Terminal payoff as a (non-solution) surface, for negative tests.
PriceSurface make_payoff_surface(OptionKind kind, double strike, double maturity);

}  // namespace pricer
