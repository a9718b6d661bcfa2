#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace pricer {

/// Input outside the mathematical domain of an operation (bad spot, wrong
/// contract kind, singular parameters). The CLI maps this to exit code 1.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

enum class OptionKind { call, put };

enum class ExerciseStyle { european, american, bermudan };

/// Vanilla contract: strike K, maturity T, call/put, exercise style.
/// Bermudan contracts carry the first possible exercise date T̂.
struct OptionContract {
    double strike = 0.0;
    double maturity = 0.0;
    OptionKind kind = OptionKind::call;
    ExerciseStyle style = ExerciseStyle::european;
    double first_exercise = 0.0;  // bermudan only, 0 ≤ T̂ ≤ T

    void validate() const {
        if (!(strike > 0.0)) throw DomainError("strike must be > 0");
        if (!(maturity >= 0.0)) throw DomainError("maturity must be >= 0");
        if (style == ExerciseStyle::bermudan &&
            !(first_exercise >= 0.0 && first_exercise <= maturity)) {
            throw DomainError("bermudan first_exercise must lie in [0, maturity]");
        }
    }
};

/// Spot, continuously-compounded rate, and valuation time (years).
struct MarketState {
    double spot = 0.0;
    double rate = 0.0;
    double now = 0.0;

    void validate() const {
        if (!(spot > 0.0)) throw DomainError("spot must be > 0");
        if (!std::isfinite(rate)) throw DomainError("rate must be finite");
        if (!(now >= 0.0)) throw DomainError("valuation time must be >= 0");
    }
};

/// Annualized volatility. Zero is allowed so callers can take the
/// deterministic limit via their dedicated branches.
struct Volatility {
    double sigma = 0.0;

    void validate() const {
        if (!(sigma >= 0.0)) throw DomainError("sigma must be >= 0");
    }
};

}  // namespace pricer
