// Command-line front end: sweeps and optimal-M searches over the success
// probability methods, plus a fast self-check suite. Emits CSV or JSON.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "pzf_udn/errors.hpp"
#include "pzf_udn/experiment.hpp"

namespace {

struct CommonArgs {
    std::string preset, config, output, format, methods;
    std::string lambda, theta, m;
    std::string alpha, rho0, rho, r0, nr;
    std::string trials, seed;
};

void register_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--preset", args.preset,
                    "built-in figure spec: fig1l|fig1r|fig2|fig3|fig4");
    sub->add_option("--config", args.config,
                    "config file of 'key = value' lines");
    sub->add_option("--seed", args.seed, "RNG seed (64-bit)");
    sub->add_option("--trials", args.trials, "Monte Carlo trials per point");
    sub->add_option("--output", args.output, "output path (default stdout)");
    sub->add_option("--format", args.format, "csv|json");
    sub->add_option("--lambda", args.lambda,
                    "density in nodes/m^2; comma list sweeps it");
    sub->add_option("--alpha", args.alpha, "pathloss exponent (> 2)");
    sub->add_option("--rho0", args.rho0, "desired-link transmit power, W");
    sub->add_option("--rho", args.rho, "interferer transmit power, W");
    sub->add_option("--r0", args.r0, "desired-link distance, m");
    sub->add_option("--nr", args.nr, "receive antennas (1..32)");
    sub->add_option("--theta", args.theta,
                    "SIR threshold; comma list sweeps it");
    sub->add_option("--m", args.m,
                    "cancelled interferers; list or a..b range sweeps it");
    sub->add_option("--methods", args.methods,
                    "comma list: exact_m0,approx,upper_alzer,lower_jindal,"
                    "mc_exact,mc_approx");
}

bool is_list(const std::string& s) {
    return s.find(',') != std::string::npos ||
           s.find("..") != std::string::npos;
}

pzf_udn::ExperimentSpec build_spec(const CLI::App* sub,
                                   const CommonArgs& args) {
    using pzf_udn::apply_kv;
    pzf_udn::ExperimentSpec spec;
    if (sub->count("--preset") > 0) {
        spec = pzf_udn::preset_spec(args.preset);
    } else {
        spec.methods = {pzf_udn::Method::exact_m0, pzf_udn::Method::approx,
                        pzf_udn::Method::upper_alzer,
                        pzf_udn::Method::lower_jindal,
                        pzf_udn::Method::mc_exact};
    }
    if (sub->count("--config") > 0)
        pzf_udn::apply_config_file(spec, args.config);

    // Flags override both the preset and the config file.
    if (sub->count("--lambda") > 0)
        apply_kv(spec, is_list(args.lambda) ? "lambda_grid" : "lambda",
                 args.lambda);
    if (sub->count("--theta") > 0)
        apply_kv(spec, is_list(args.theta) ? "theta_grid" : "theta",
                 args.theta);
    if (sub->count("--m") > 0)
        apply_kv(spec, is_list(args.m) ? "m_grid" : "m", args.m);
    if (sub->count("--alpha") > 0) apply_kv(spec, "alpha", args.alpha);
    if (sub->count("--rho0") > 0) apply_kv(spec, "rho0", args.rho0);
    if (sub->count("--rho") > 0) apply_kv(spec, "rho", args.rho);
    if (sub->count("--r0") > 0) apply_kv(spec, "r0", args.r0);
    if (sub->count("--nr") > 0) apply_kv(spec, "n_r", args.nr);
    if (sub->count("--trials") > 0) apply_kv(spec, "trials", args.trials);
    if (sub->count("--seed") > 0) apply_kv(spec, "seed", args.seed);
    if (sub->count("--output") > 0) apply_kv(spec, "output_path", args.output);
    if (sub->count("--format") > 0)
        apply_kv(spec, "output_format", args.format);
    if (sub->count("--methods") > 0) apply_kv(spec, "methods", args.methods);
    return spec;
}

int run_tabular(const CLI::App* sub, const CommonArgs& args, bool optimal) {
    const pzf_udn::ExperimentSpec spec = build_spec(sub, args);
    spec.validate();

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<pzf_udn::ResultRow> rows;
    std::vector<pzf_udn::OptimalRow> optimal_rows;
    if (optimal)
        optimal_rows = pzf_udn::run_optimal_m(spec);
    else
        rows = pzf_udn::run_sweep(spec);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    std::ofstream file;
    if (!spec.output_path.empty()) {
        file.open(spec.output_path);
        if (!file) {
            std::cerr << "cannot open output path: " << spec.output_path
                      << "\n";
            return 2;
        }
    }
    std::ostream& os = spec.output_path.empty() ? std::cout : file;
    if (optimal) {
        if (spec.output_format == "csv")
            pzf_udn::write_optimal_csv(optimal_rows, os);
        else
            pzf_udn::write_optimal_json(spec, optimal_rows, wall, os);
    } else {
        if (spec.output_format == "csv")
            pzf_udn::write_sweep_csv(rows, os);
        else
            pzf_udn::write_sweep_json(spec, rows, wall, os);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"uplink success probability for partial zero-forcing "
                 "receivers in Poisson fields"};
    app.require_subcommand(1);

    CommonArgs sweep_args, optimal_args;
    CLI::App* sweep =
        app.add_subcommand("sweep", "success probability over a 1-D grid");
    register_common(sweep, sweep_args);
    CLI::App* optimal = app.add_subcommand(
        "optimal-m", "argmax over M of the success probability");
    register_common(optimal, optimal_args);

    std::string val_seed = "1";
    double corrupt_kappa = 1.0;
    CLI::App* validate =
        app.add_subcommand("validate", "fast self-check suite");
    validate->add_option("--seed", val_seed, "RNG seed (64-bit)");
    validate
        ->add_option("--corrupt-kappa", corrupt_kappa,
                     "fault injection: scale the upper-bound constant")
        ->group("");  // hidden; exists so the failure path is testable

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sweep->parsed()) return run_tabular(sweep, sweep_args, false);
        if (optimal->parsed()) return run_tabular(optimal, optimal_args, true);
        std::uint64_t seed = 0;
        try {
            seed = std::stoull(val_seed);
        } catch (const std::exception&) {
            std::cerr << "not a seed: '" << val_seed << "'\n";
            return 2;
        }
        return pzf_udn::cmd_validate(seed, corrupt_kappa, std::cout);
    } catch (const pzf_udn::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        // domain and not-defined errors are usage problems
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
