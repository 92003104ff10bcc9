#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pzf_udn/params.hpp"

// Sweep orchestration behind the command-line front end: figure presets,
// config-file handling, grid evaluation across methods, and CSV/JSON output.

namespace pzf_udn {

enum class Method {
    exact_m0,
    approx,
    upper_alzer,
    lower_jindal,
    mc_exact,
    mc_approx
};

std::string to_string(Method m);
Method method_from_string(const std::string& s);

// Whether a method exists at a grid point. Undefined combinations are
// skipped by sweeps rather than reported as errors (a figure simply has no
// sample there).
bool method_defined(Method method, int m, double alpha, int n_r);

struct ExperimentSpec {
    NetworkParams network;
    int n_r = 10;
    std::vector<double> theta_grid = {1.0};
    std::vector<double> lambda_grid = {1e-2};
    std::vector<int> m_grid = {0};
    std::vector<Method> methods;
    SimConfig sim;
    std::string output_path;  // empty: stdout
    std::string output_format = "csv";

    // Grids and methods non-empty, at most one grid longer than 1 (sweeps
    // are one-dimensional, like the figures), format recognized.
    void validate() const;
};

// Built-in specs reproducing the four figures: fig1l/fig1r sweep m at fixed
// density, fig2 sweeps density, fig3 sweeps the SIR threshold, fig4 is the
// optimal-m sweep over density.
ExperimentSpec preset_spec(const std::string& name);

// One `key = value` assignment (config-file line or equivalent). Unknown
// keys or malformed values throw DomainError.
void apply_kv(ExperimentSpec& spec, const std::string& key,
              const std::string& value);

// Applies every assignment in the file; '#' starts a comment.
void apply_config_file(ExperimentSpec& spec, const std::string& path);

struct ResultRow {
    NetworkParams network;
    int n_r = 0;
    double theta = 0.0;
    int m = 0;
    Method method = Method::approx;
    double value = 0.0;
    bool is_mc = false;  // MC rows carry ci/trials/seed, analytic rows do not
    double ci_half_width = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

struct OptimalRow {
    NetworkParams network;
    int n_r = 0;
    double theta = 0.0;
    int m_star = 0;
    double p_star = 0.0;
};

std::vector<ResultRow> run_sweep(const ExperimentSpec& spec);
std::vector<OptimalRow> run_optimal_m(const ExperimentSpec& spec);

void write_sweep_csv(const std::vector<ResultRow>& rows, std::ostream& os);
void write_sweep_json(const ExperimentSpec& spec,
                      const std::vector<ResultRow>& rows,
                      double wall_time_seconds, std::ostream& os);
void write_optimal_csv(const std::vector<OptimalRow>& rows, std::ostream& os);
void write_optimal_json(const ExperimentSpec& spec,
                        const std::vector<OptimalRow>& rows,
                        double wall_time_seconds, std::ostream& os);

// Fast self-check suite: special-function identities, an independent
// quadrature of the transform exponent, combiner-gain laws, analytic vs
// Monte Carlo agreement, bound ordering, RNG known answers, determinism.
// Prints one line per check; returns 0 iff all pass. kappa_scale != 1
// corrupts the upper-bound constant on purpose so the ordering check must
// fail (fault-injection path).
int cmd_validate(std::uint64_t seed, double kappa_scale, std::ostream& os);

}  // namespace pzf_udn
