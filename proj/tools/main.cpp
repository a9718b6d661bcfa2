// Command-line front end: pricing, PDE verification, path simulation,
// oracle comparison, and parameter sweeps with machine-readable output.
//
// Exit codes: 0 success / within tolerance / report-only,
//             1 domain error, 2 usage error, 3 tolerance failure.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pricer/closed_form.hpp"
#include "pricer/math.hpp"
#include "pricer/oracles.hpp"
#include "pricer/pde_verify.hpp"
#include "pricer/sqrtbm.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitUsageError = 2;
constexpr int kExitToleranceFailure = 3;

// Shortest round-trip decimal representation, so reruns diff cleanly.
std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// Expand `--config file.json` into flags before parsing. The file is a
// flat object mirroring the long flag names, e.g. {"spot": 100,
// "first-exercise": 0.5}. Explicit flags on the command line win because
// the expansion is inserted ahead of them.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> expanded;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] != "--config") {
            expanded.push_back(args[i]);
            continue;
        }
        if (i + 1 >= args.size())
            throw CLI::ValidationError("--config requires a file path");
        std::ifstream in(args[++i]);
        if (!in) throw CLI::ValidationError("cannot open config file: " + args[i]);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw CLI::ValidationError(std::string("config file is not valid JSON: ") +
                                       e.what());
        }
        if (!j.is_object())
            throw CLI::ValidationError("config file must be a JSON object");
        for (auto& [key, value] : j.items()) {
            if (value.is_boolean()) {
                if (value.get<bool>()) expanded.push_back("--" + key);
            } else {
                expanded.push_back("--" + key);
                expanded.push_back(value.is_string() ? value.get<std::string>()
                                                     : value.dump());
            }
        }
    }
    return expanded;
}

struct CommonFlags {
    std::string output = "json";
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags& flags, const std::string& default_output) {
    flags.output = default_output;
    cmd->add_option("--output", flags.output, "Output format")
        ->check(CLI::IsMember({"json", "csv", "plain"}));
    cmd->add_option("--out", flags.out_path, "Write output to this path instead of stdout");
}

void emit(const CommonFlags& flags, const std::string& text) {
    if (flags.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(flags.out_path, std::ios::binary);
    if (!out) throw pricer::DomainError("cannot open output path: " + flags.out_path);
    out << text;
}

struct ModelFlags {
    std::string model = "bs";
    std::string kind = "call";
    double spot = 0.0;
    double strike = 0.0;
    double rate = 0.0;
    double vol = 0.0;
    double maturity = 0.0;
    double now = 0.0;
    double psi = 0.0;
    double delta = 0.0;
    double first_exercise = 0.0;
    double beta = 0.0;
    bool has_psi = false;
    bool has_delta = false;
    bool has_first_exercise = false;
    bool has_beta = false;
};

void add_model_flags(CLI::App* cmd, ModelFlags& m) {
    cmd->add_option("--model", m.model, "Pricing model")
        ->check(CLI::IsMember({"bs", "american", "bermudan", "stochvol"}));
    cmd->add_option("--kind", m.kind, "Option kind")
        ->check(CLI::IsMember({"call", "put"}));
    cmd->add_option("--spot", m.spot, "Spot price")->required();
    cmd->add_option("--strike", m.strike, "Strike price")->required();
    cmd->add_option("--rate", m.rate, "Risk-free rate")->required();
    cmd->add_option("--vol", m.vol, "Volatility (annualized)");
    cmd->add_option("--maturity", m.maturity, "Maturity T in years")->required();
    cmd->add_option("--now", m.now, "Valuation time t in years");
    auto* psi = cmd->add_option("--psi", m.psi, "American premium constant");
    auto* delta = cmd->add_option("--delta", m.delta, "Bermudan premium constant");
    auto* fx = cmd->add_option("--first-exercise", m.first_exercise,
                               "Bermudan first exercise date");
    auto* beta = cmd->add_option("--beta", m.beta, "Volatility component beta");
    cmd->callback([&m, psi, delta, fx, beta]() {
        m.has_psi = psi->count() > 0;
        m.has_delta = delta->count() > 0;
        m.has_first_exercise = fx->count() > 0;
        m.has_beta = beta->count() > 0;
    });
}

struct ModelInputs {
    pricer::MarketState market;
    pricer::OptionContract contract;
    pricer::Volatility vol;
    pricer::PremiumParams premium_params;
    pricer::BermudanParams bermudan;
    pricer::StochVolParams stochvol;
    std::string formula;
};

ModelInputs resolve_model(const ModelFlags& m) {
    ModelInputs in;
    in.market = {m.spot, m.rate, m.now};
    in.contract.strike = m.strike;
    in.contract.maturity = m.maturity;
    in.contract.kind = m.kind == "call" ? pricer::OptionKind::call
                                        : pricer::OptionKind::put;
    in.vol = {m.vol};

    if (m.model == "bs") {
        in.contract.style = pricer::ExerciseStyle::european;
        in.formula = "bs";
    } else if (m.model == "american") {
        if (!m.has_psi)
            throw CLI::ValidationError("--psi is required for --model american");
        in.contract.style = pricer::ExerciseStyle::american;
        in.premium_params.psi = m.psi;
        in.formula = in.contract.kind == pricer::OptionKind::call ? "eq3" : "eq4";
    } else if (m.model == "bermudan") {
        if (!m.has_delta || !m.has_first_exercise)
            throw CLI::ValidationError(
                "--delta and --first-exercise are required for --model bermudan");
        if (in.contract.kind != pricer::OptionKind::put)
            throw CLI::ValidationError("--model bermudan prices puts only");
        in.contract.style = pricer::ExerciseStyle::bermudan;
        in.contract.first_exercise = m.first_exercise;
        in.bermudan.delta = m.delta;
        in.formula = "eq5";
    } else {  // stochvol
        if (!m.has_beta)
            throw CLI::ValidationError("--beta is required for --model stochvol");
        if (in.contract.kind != pricer::OptionKind::call)
            throw CLI::ValidationError("--model stochvol prices calls only");
        in.contract.style = pricer::ExerciseStyle::european;
        in.stochvol.beta = m.beta;
        in.formula = "eq7";
    }
    return in;
}

pricer::PriceResult price_model(const ModelInputs& in) {
    using pricer::OptionKind;
    if (in.formula == "bs")
        return in.contract.kind == OptionKind::call
                   ? pricer::bs_call(in.market, in.contract, in.vol)
                   : pricer::bs_put(in.market, in.contract, in.vol);
    if (in.formula == "eq3")
        return pricer::american_call(in.market, in.contract, in.vol, in.premium_params);
    if (in.formula == "eq4")
        return pricer::american_put(in.market, in.contract, in.vol, in.premium_params);
    if (in.formula == "eq5")
        return pricer::bermudan_put(in.market, in.contract, in.vol, in.bermudan);
    return pricer::stochvol_call(in.market, in.contract, in.stochvol);
}

json model_inputs_json(const ModelFlags& m) {
    json j{{"model", m.model},     {"kind", m.kind},   {"spot", m.spot},
           {"strike", m.strike},   {"rate", m.rate},   {"maturity", m.maturity},
           {"now", m.now}};
    if (m.model != "stochvol") j["vol"] = m.vol;
    if (m.has_psi) j["psi"] = m.psi;
    if (m.has_delta) j["delta"] = m.delta;
    if (m.has_first_exercise) j["first_exercise"] = m.first_exercise;
    if (m.has_beta) j["beta"] = m.beta;
    return j;
}

// ---------------------------------------------------------------- price

int run_price(const ModelFlags& m, const CommonFlags& common) {
    const ModelInputs in = resolve_model(m);
    const pricer::PriceResult result = price_model(in);

    if (common.output == "csv") {
        std::ostringstream out;
        out << "price,premium_factor,base_price\n"
            << fmt_double(result.price) << ',' << fmt_double(result.premium_factor)
            << ',' << fmt_double(result.base_price) << '\n';
        emit(common, out.str());
    } else if (common.output == "plain") {
        std::ostringstream out;
        out << "price = " << fmt_double(result.price)
            << "\npremium_factor = " << fmt_double(result.premium_factor)
            << "\nbase_price = " << fmt_double(result.base_price) << '\n';
        emit(common, out.str());
    } else {
        json j{{"command", "price"},
               {"inputs", model_inputs_json(m)},
               {"result",
                {{"price", result.price},
                 {"premium_factor", result.premium_factor},
                 {"base_price", result.base_price},
                 {"formula", in.formula}}},
               {"diagnostics", json::object()}};
        emit(common, j.dump(2) + "\n");
    }
    return kExitOk;
}

// ----------------------------------------------------------- verify-pde

struct VerifyFlags {
    std::string kind = "call";
    std::string candidate = "solution";
    std::string partials = "analytic";
    double strike = 100.0;
    double rate = 0.05;
    double vol = 0.2;
    double maturity = 1.0;
    double psi = 0.0;
    double s_min = 50.0, s_max = 150.0;
    double t_min = 0.0, t_max = 0.9;
    std::size_t n_s = 101, n_t = 91;
    double h_s_rel = 1e-4, h_t = 1e-6;
    double tolerance = 1e-8;
};

int run_verify_pde(const VerifyFlags& v, const CommonFlags& common) {
    const auto kind = v.kind == "call" ? pricer::OptionKind::call
                                       : pricer::OptionKind::put;
    pricer::PriceSurface surface =
        v.candidate == "payoff"
            ? pricer::make_payoff_surface(kind, v.strike, v.maturity)
            : pricer::make_premium_surface(kind, v.strike, v.maturity, v.rate, v.vol,
                                           v.psi);
    if (v.partials == "fd") {
        surface.dt = nullptr;
        surface.ds = nullptr;
        surface.d2s = nullptr;
    }
    const auto coeffs = pricer::PdeCoefficients::from_psi(v.rate, v.vol, v.psi);
    const pricer::GridSpec grid{v.s_min, v.s_max, v.t_min, v.t_max, v.n_s, v.n_t};
    const pricer::FdSteps steps{v.h_s_rel, v.h_t};
    const pricer::ResidualReport report =
        pricer::residual_scan(surface, coeffs, grid, steps);
    const bool pass = report.max_abs <= v.tolerance;

    json j{{"command", "verify-pde"},
           {"inputs",
            {{"kind", v.kind},       {"candidate", v.candidate},
             {"partials", v.partials}, {"strike", v.strike},
             {"rate", v.rate},       {"vol", v.vol},
             {"maturity", v.maturity}, {"psi", v.psi},
             {"s_min", v.s_min},     {"s_max", v.s_max},
             {"t_min", v.t_min},     {"t_max", v.t_max},
             {"n_s", v.n_s},         {"n_t", v.n_t},
             {"tolerance", v.tolerance}}},
           {"result",
            {{"max_abs", report.max_abs},
             {"mean_abs", report.mean_abs},
             {"argmax", {{"t", report.argmax_t}, {"s", report.argmax_s}}},
             {"n_nodes", report.values.size()},
             {"pass", pass}}},
           {"diagnostics", json::object()}};
    if (common.output == "plain") {
        std::ostringstream out;
        out << "max_abs = " << fmt_double(report.max_abs)
            << "\nmean_abs = " << fmt_double(report.mean_abs) << "\npass = "
            << (pass ? "true" : "false") << '\n';
        emit(common, out.str());
    } else {
        emit(common, j.dump(2) + "\n");
    }
    return pass ? kExitOk : kExitToleranceFailure;
}

// ------------------------------------------------------ simulate-sqrtbm

struct SqrtBmFlags {
    double dt = 0.01;
    std::size_t n_steps = 1000;
    std::uint64_t seed = 0;
    std::string csv_out;
};

int run_simulate_sqrtbm(const SqrtBmFlags& s, const CommonFlags& common) {
    const pricer::SqrtBmConfig config{s.dt, s.n_steps, s.seed, 0};
    const pricer::IncrementSample sample = pricer::sqrtbm_increments(config);

    std::ostringstream csv;
    csv << "step,t,increment,partial_sum\n";
    csv << "0,0,0,0\n";
    double sum = 0.0;
    for (std::size_t k = 0; k < sample.values.size(); ++k) {
        sum += sample.values[k];
        csv << (k + 1) << ',' << fmt_double(double(k + 1) * s.dt) << ','
            << fmt_double(sample.values[k]) << ',' << fmt_double(sum) << '\n';
    }

    double mean = 0.0, m2 = 0.0;
    for (double x : sample.values) {
        mean += x;
        m2 += x * x;
    }
    const double n = double(sample.values.size());
    mean /= n;
    m2 /= n;
    double var = 0.0, var2 = 0.0;
    for (double x : sample.values) {
        var += (x - mean) * (x - mean);
        var2 += (x * x - m2) * (x * x - m2);
    }
    var /= std::max(n - 1.0, 1.0);
    var2 /= std::max(n - 1.0, 1.0);

    json diag{{"n", sample.values.size()},
              {"mean", mean},
              {"mean_std_error", std::sqrt(var / n)},
              {"second_moment", m2},
              {"second_moment_std_error", std::sqrt(var2 / n)},
              {"expected_second_moment", std::sqrt(2.0 * s.dt / M_PI)},
              {"final_partial_sum", sum}};
    json j{{"command", "simulate-sqrtbm"},
           {"inputs", {{"dt", s.dt}, {"n_steps", s.n_steps}, {"seed", s.seed}}},
           {"result", json::object()},
           {"diagnostics", diag}};

    if (!s.csv_out.empty()) {
        std::ofstream out(s.csv_out, std::ios::binary);
        if (!out) throw pricer::DomainError("cannot open csv path: " + s.csv_out);
        out << csv.str();
    }
    if (common.output == "csv")
        emit(common, csv.str());
    else
        emit(common, j.dump(2) + "\n");
    return kExitOk;
}

// ------------------------------------------------------- oracle-compare

struct OracleFlags {
    std::string oracle = "crr";
    std::size_t tree_steps = 1000;
    std::size_t paths = 100000;
    std::size_t mc_steps = 250;
    std::uint64_t seed = 0;
    bool antithetic = false;
    double lambda = 0.0;
    std::string omega = "rademacher";
    double omega_width = 1.0;
    double tol = 0.0;
    double se_mult = 0.0;
    bool has_tol = false;
    bool has_se_mult = false;
};

int run_oracle_compare(const ModelFlags& m, const OracleFlags& o,
                       const CommonFlags& common) {
    const ModelInputs in = resolve_model(m);
    const pricer::PriceResult closed = price_model(in);

    pricer::TolerancePolicy policy = pricer::TolerancePolicy::report_only();
    if (o.has_tol) policy = pricer::TolerancePolicy::absolute(o.tol);
    if (o.has_se_mult) policy = pricer::TolerancePolicy::se_multiple(o.se_mult);

    // Premium formulas vs lattice and eq7 vs the perturbed simulator carry
    // no agreement claim; those pairs always report without judging.
    const bool forced_report_only =
        ((m.model == "american" || m.model == "bermudan") && o.oracle == "crr") ||
        (m.model == "stochvol" && o.oracle == "mc-eq6");
    if (forced_report_only) policy = pricer::TolerancePolicy::report_only();

    pricer::ComparisonReport report;
    json diagnostics = json::object();
    if (o.oracle == "crr") {
        const double tree =
            pricer::crr_price(in.market, in.contract, in.vol, {o.tree_steps});
        report = pricer::compare(closed, in.contract, tree, in.contract, policy);
        diagnostics["tree_steps"] = o.tree_steps;
    } else if (o.oracle == "mc-gbm") {
        const pricer::McConfig mc{o.paths, 1, o.seed, o.antithetic};
        const pricer::McEstimate est =
            pricer::mc_gbm_price(in.market, in.contract, in.vol, mc);
        report = pricer::compare(closed, in.contract, est, in.contract, policy);
        diagnostics["n_paths"] = o.paths;
        diagnostics["antithetic"] = o.antithetic;
    } else {  // mc-eq6
        if (m.model != "stochvol")
            throw CLI::ValidationError("--oracle mc-eq6 requires --model stochvol");
        pricer::StochVolParams params = in.stochvol;
        params.lambda = o.lambda;
        params.omega.kind = o.omega == "uniform" ? pricer::OmegaSpec::Kind::uniform
                                                 : pricer::OmegaSpec::Kind::rademacher;
        params.omega.half_width = o.omega_width;
        const pricer::McConfig mc{o.paths, o.mc_steps, o.seed, false};
        const pricer::Eq6Estimate est =
            pricer::mc_eq6_price(in.market, in.contract, params, mc);
        report = pricer::compare(closed, in.contract, est.estimate, in.contract, policy);
        diagnostics = {{"n_paths", o.paths},
                       {"n_steps", o.mc_steps},
                       {"lambda", o.lambda},
                       {"omega", o.omega},
                       {"rejected_steps", est.rejected_steps},
                       {"total_steps", est.total_steps},
                       {"perturbation_mean", est.perturbation_mean},
                       {"perturbation_std_error", est.perturbation_std_error},
                       {"rejection_warning", est.rejection_warning}};
    }

    const char* verdict = report.verdict == pricer::Verdict::within_tolerance
                              ? "within_tolerance"
                          : report.verdict == pricer::Verdict::outside_tolerance
                              ? "outside_tolerance"
                              : "report_only";
    json j{{"command", "oracle-compare"},
           {"inputs", model_inputs_json(m)},
           {"result",
            {{"closed_form_price", report.closed_form_price},
             {"oracle_price", report.oracle_price},
             {"oracle_std_error", report.oracle_std_error},
             {"abs_diff", report.abs_diff},
             {"rel_diff", report.rel_diff},
             {"oracle", o.oracle},
             {"verdict", verdict}}},
           {"diagnostics", diagnostics}};
    j["inputs"]["seed"] = o.seed;
    if (common.output == "plain") {
        std::ostringstream out;
        out << "closed_form = " << fmt_double(report.closed_form_price)
            << "\noracle = " << fmt_double(report.oracle_price)
            << "\nabs_diff = " << fmt_double(report.abs_diff)
            << "\nverdict = " << verdict << '\n';
        emit(common, out.str());
    } else {
        emit(common, j.dump(2) + "\n");
    }
    return report.verdict == pricer::Verdict::outside_tolerance ? kExitToleranceFailure
                                                                : kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepFlags {
    std::string param = "spot";
    double from = 0.0;
    double to = 0.0;
    std::size_t points = 2;
};

int run_sweep(ModelFlags m, const SweepFlags& s, const CommonFlags& common) {
    if (s.points < 2) throw CLI::ValidationError("--points must be >= 2");
    std::ostringstream out;
    out << s.param << ",price,premium_factor,base_price\n";
    for (std::size_t i = 0; i < s.points; ++i) {
        const double x = s.from + (s.to - s.from) * double(i) / double(s.points - 1);
        if (s.param == "spot") m.spot = x;
        else if (s.param == "strike") m.strike = x;
        else if (s.param == "rate") m.rate = x;
        else if (s.param == "vol") m.vol = x;
        else if (s.param == "maturity") m.maturity = x;
        else if (s.param == "psi") m.psi = x;
        else if (s.param == "delta") m.delta = x;
        else if (s.param == "beta") m.beta = x;
        else throw CLI::ValidationError("unknown sweep parameter: " + s.param);
        const pricer::PriceResult r = price_model(resolve_model(m));
        out << fmt_double(x) << ',' << fmt_double(r.price) << ','
            << fmt_double(r.premium_factor) << ',' << fmt_double(r.base_price) << '\n';
    }
    emit(common, out.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form option pricing with PDE and Monte Carlo verification"};
    app.require_subcommand(1);

    ModelFlags price_model_flags;
    CommonFlags price_common;
    auto* price_cmd = app.add_subcommand("price", "Price a contract with a closed form");
    add_model_flags(price_cmd, price_model_flags);
    add_common(price_cmd, price_common, "json");

    VerifyFlags verify_flags;
    CommonFlags verify_common;
    auto* verify_cmd =
        app.add_subcommand("verify-pde", "Scan the PDE residual of a candidate price");
    verify_cmd->add_option("--kind", verify_flags.kind)
        ->check(CLI::IsMember({"call", "put"}));
    verify_cmd->add_option("--candidate", verify_flags.candidate)
        ->check(CLI::IsMember({"solution", "payoff"}));
    verify_cmd->add_option("--partials", verify_flags.partials)
        ->check(CLI::IsMember({"analytic", "fd"}));
    verify_cmd->add_option("--strike", verify_flags.strike);
    verify_cmd->add_option("--rate", verify_flags.rate);
    verify_cmd->add_option("--vol", verify_flags.vol);
    verify_cmd->add_option("--maturity", verify_flags.maturity);
    verify_cmd->add_option("--psi", verify_flags.psi);
    verify_cmd->add_option("--s-min", verify_flags.s_min);
    verify_cmd->add_option("--s-max", verify_flags.s_max);
    verify_cmd->add_option("--t-min", verify_flags.t_min);
    verify_cmd->add_option("--t-max", verify_flags.t_max);
    verify_cmd->add_option("--n-s", verify_flags.n_s);
    verify_cmd->add_option("--n-t", verify_flags.n_t);
    verify_cmd->add_option("--h-s-rel", verify_flags.h_s_rel);
    verify_cmd->add_option("--h-t", verify_flags.h_t);
    verify_cmd->add_option("--tolerance", verify_flags.tolerance);
    add_common(verify_cmd, verify_common, "json");

    SqrtBmFlags sqrtbm_flags;
    CommonFlags sqrtbm_common;
    auto* sqrtbm_cmd =
        app.add_subcommand("simulate-sqrtbm", "Simulate square-root increments");
    sqrtbm_cmd->add_option("--dt", sqrtbm_flags.dt);
    sqrtbm_cmd->add_option("--n-steps", sqrtbm_flags.n_steps);
    sqrtbm_cmd->add_option("--seed", sqrtbm_flags.seed);
    sqrtbm_cmd->add_option("--csv-out", sqrtbm_flags.csv_out,
                           "Also dump the path as CSV to this file");
    add_common(sqrtbm_cmd, sqrtbm_common, "json");

    ModelFlags compare_model_flags;
    OracleFlags oracle_flags;
    CommonFlags compare_common;
    auto* compare_cmd =
        app.add_subcommand("oracle-compare", "Compare a closed form with an oracle");
    add_model_flags(compare_cmd, compare_model_flags);
    compare_cmd->add_option("--oracle", oracle_flags.oracle)
        ->check(CLI::IsMember({"crr", "mc-gbm", "mc-eq6"}));
    compare_cmd->add_option("--tree-steps", oracle_flags.tree_steps);
    compare_cmd->add_option("--paths", oracle_flags.paths);
    compare_cmd->add_option("--mc-steps", oracle_flags.mc_steps);
    compare_cmd->add_option("--seed", oracle_flags.seed);
    compare_cmd->add_flag("--antithetic", oracle_flags.antithetic);
    compare_cmd->add_option("--lambda", oracle_flags.lambda);
    compare_cmd->add_option("--omega", oracle_flags.omega)
        ->check(CLI::IsMember({"rademacher", "uniform"}));
    compare_cmd->add_option("--omega-width", oracle_flags.omega_width);
    auto* tol_opt = compare_cmd->add_option("--tol", oracle_flags.tol,
                                            "Absolute tolerance policy");
    auto* se_opt = compare_cmd->add_option("--se-mult", oracle_flags.se_mult,
                                           "Standard-error multiple policy");
    tol_opt->excludes(se_opt);
    add_common(compare_cmd, compare_common, "json");

    ModelFlags sweep_model_flags;
    SweepFlags sweep_flags;
    CommonFlags sweep_common;
    auto* sweep_cmd = app.add_subcommand("sweep", "Emit price curves over a parameter");
    add_model_flags(sweep_cmd, sweep_model_flags);
    sweep_cmd->add_option("--param", sweep_flags.param)->required();
    sweep_cmd->add_option("--from", sweep_flags.from)->required();
    sweep_cmd->add_option("--to", sweep_flags.to)->required();
    sweep_cmd->add_option("--points", sweep_flags.points);
    add_common(sweep_cmd, sweep_common, "csv");

    for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) {
        sub->add_option("--config",
                        "JSON file mirroring this subcommand's long flags")
            ->configurable(false);
        for (CLI::Option* opt : sub->get_options())
            if (opt->get_expected_min() > 0)
                opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }

    try {
        std::vector<std::string> args =
            expand_config(std::vector<std::string>(argv + 1, argv + argc));
        std::reverse(args.begin(), args.end());
        app.parse(args);
        oracle_flags.has_tol = tol_opt->count() > 0;
        oracle_flags.has_se_mult = se_opt->count() > 0;

        if (price_cmd->parsed()) return run_price(price_model_flags, price_common);
        if (verify_cmd->parsed()) return run_verify_pde(verify_flags, verify_common);
        if (sqrtbm_cmd->parsed())
            return run_simulate_sqrtbm(sqrtbm_flags, sqrtbm_common);
        if (compare_cmd->parsed())
            return run_oracle_compare(compare_model_flags, oracle_flags, compare_common);
        if (sweep_cmd->parsed())
            return run_sweep(sweep_model_flags, sweep_flags, sweep_common);
        return kExitUsageError;
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsageError;
    } catch (const pricer::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitDomainError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomainError;
    }
}
