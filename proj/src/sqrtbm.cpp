#include "pricer/sqrtbm.hpp"

#include <cmath>

#include "pricer/rng.hpp"

namespace pricer {

IncrementSample sqrtbm_increments(const SqrtBmConfig& config) {
    config.validate();
    RandomStream gauss(substream_seed(config.seed, config.stream, 0));
    RandomStream signs(substream_seed(config.seed, config.stream, 1));

    IncrementSample sample;
    sample.values.reserve(config.n_steps);
    sample.gaussian.reserve(config.n_steps);
    const double sqrt_dt = std::sqrt(config.dt);
    for (std::size_t k = 0; k < config.n_steps; ++k) {
        const double db = sqrt_dt * gauss.normal();
        const double zeta = signs.rademacher();
        sample.gaussian.push_back(db);
        sample.values.push_back(zeta * std::sqrt(std::abs(db)));
    }
    return sample;
}

std::vector<double> sqrtbm_path(const SqrtBmConfig& config) {
    const IncrementSample sample = sqrtbm_increments(config);
    std::vector<double> path;
    path.reserve(config.n_steps + 1);
    path.push_back(0.0);
    double sum = 0.0;
    for (double x : sample.values) {
        sum += x;
        path.push_back(sum);
    }
    return path;
}

std::vector<ScalingRow> scaling_diagnostic(const SqrtBmConfig& config,
                                           std::span<const double> dt_list) {
    if (dt_list.empty()) throw DomainError("scaling_diagnostic: empty dt list");
    std::vector<ScalingRow> table;
    table.reserve(dt_list.size());
    for (std::size_t i = 0; i < dt_list.size(); ++i) {
        SqrtBmConfig c = config;
        c.dt = dt_list[i];
        c.stream = config.stream + i;  // fresh substream per dt
        const IncrementSample sample = sqrtbm_increments(c);

        double sum = 0.0, sum_sq = 0.0;
        for (double x : sample.values) {
            const double x2 = x * x;
            sum += x2;
            sum_sq += x2 * x2;
        }
        const double n = double(sample.values.size());
        const double mean = sum / n;
        const double var = std::max(sum_sq / n - mean * mean, 0.0);
        table.push_back({c.dt, mean, std::sqrt(var / n), sample.values.size()});
    }
    return table;
}

}  // namespace pricer
