#include "pzf_udn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "pzf_udn/analytic.hpp"
#include "pzf_udn/errors.hpp"
#include "pzf_udn/philox.hpp"
#include "pzf_udn/simulator.hpp"
#include "pzf_udn/specfun.hpp"
#include "pzf_udn/stats.hpp"

namespace pzf_udn {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw DomainError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw DomainError("not a number: '" + s + "'");
    return v;
}

long long parse_int(const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw DomainError("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw DomainError("not an integer: '" + s + "'");
    return v;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split_commas(s)) out.push_back(parse_double(item));
    if (out.empty()) throw DomainError("empty list");
    return out;
}

// Integer list; each comma token is a value or an inclusive "a..b" range.
std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const auto& item : split_commas(s)) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(static_cast<int>(parse_int(item)));
            continue;
        }
        const long long lo = parse_int(trim(item.substr(0, dots)));
        const long long hi = parse_int(trim(item.substr(dots + 2)));
        if (hi < lo) throw DomainError("descending range: '" + item + "'");
        if (hi - lo > 4096) throw DomainError("range too long: '" + item + "'");
        for (long long v = lo; v <= hi; ++v)
            out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw DomainError("empty list");
    return out;
}

std::vector<Method> parse_methods(const std::string& s) {
    std::vector<Method> out;
    for (const auto& item : split_commas(s))
        out.push_back(method_from_string(item));
    if (out.empty()) throw DomainError("empty method list");
    return out;
}

std::string point_desc(double lambda, double theta, int m, Method method) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "lambda=%.10g theta=%.10g m=%d method=%s",
                  lambda, theta, m, to_string(method).c_str());
    return buf;
}

void csv_params(std::string& line, const NetworkParams& net, int n_r,
                double theta) {
    char buf[192];
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g,%.10g,%d,%.10g",
                  net.lambda, net.alpha, net.rho0, net.rho, net.r0, n_r,
                  theta);
    line += buf;
}

nlohmann::json spec_json(const ExperimentSpec& spec) {
    nlohmann::json methods = nlohmann::json::array();
    for (const auto m : spec.methods) methods.push_back(to_string(m));
    return {{"alpha", spec.network.alpha},
            {"rho0", spec.network.rho0},
            {"rho", spec.network.rho},
            {"r0", spec.network.r0},
            {"n_r", spec.n_r},
            {"lambda_grid", spec.lambda_grid},
            {"theta_grid", spec.theta_grid},
            {"m_grid", spec.m_grid},
            {"methods", methods},
            {"trials", spec.sim.trials},
            {"seed", spec.sim.seed},
            {"window_points_target", spec.sim.window_points_target},
            {"confidence_level", spec.sim.confidence_level}};
}

// Adaptive Simpson quadrature for the validation command's independent
// transform check.
double simpson_rec(const std::function<double(double)>& f, double a,
                   double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) throw NumericalFailure("quadrature depth exhausted");
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Exponent integral of the distance-threshold transform, evaluated on the
// substituted smooth form: with q = alpha/(alpha-2),
//   int_d^inf s rho r / (r^alpha + s rho) dr
//     = (s rho/(alpha-2)) int_0^{d^{2-alpha}} dy / (1 + s rho y^q).
double upsilon_by_quadrature(const NetworkParams& params, int m, double s) {
    const double d = mean_mth_distance(params, m);
    const double srho = s * params.rho;
    const double q = params.alpha / (params.alpha - 2.0);
    const double upper = std::pow(d, 2.0 - params.alpha);
    const auto integrand = [&](double y) {
        return 1.0 / (1.0 + srho * std::pow(y, q));
    };
    return srho / (params.alpha - 2.0) *
           integrate(integrand, 0.0, upper, 1e-13 * upper);
}

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::exact_m0: return "exact_m0";
        case Method::approx: return "approx";
        case Method::upper_alzer: return "upper_alzer";
        case Method::lower_jindal: return "lower_jindal";
        case Method::mc_exact: return "mc_exact";
        case Method::mc_approx: return "mc_approx";
    }
    return "?";
}

Method method_from_string(const std::string& s) {
    if (s == "exact_m0") return Method::exact_m0;
    if (s == "approx") return Method::approx;
    if (s == "upper_alzer") return Method::upper_alzer;
    if (s == "lower_jindal") return Method::lower_jindal;
    if (s == "mc_exact") return Method::mc_exact;
    if (s == "mc_approx") return Method::mc_approx;
    throw DomainError("unknown method: '" + s + "'");
}

bool method_defined(Method method, int m, double alpha, int n_r) {
    switch (method) {
        case Method::exact_m0: return m == 0;
        case Method::approx:
        case Method::upper_alzer:
        case Method::mc_approx: return m >= 1;
        case Method::lower_jindal: {
            const int lo = static_cast<int>(std::ceil(alpha / 2.0)) + 1;
            return m >= lo && m <= n_r - 2;
        }
        case Method::mc_exact: return true;
    }
    return false;
}

void ExperimentSpec::validate() const {
    network.validate();
    sim.validate();
    if (n_r < 1 || n_r > 32) throw DomainError("n_r must be in [1, 32]");
    if (lambda_grid.empty() || theta_grid.empty() || m_grid.empty())
        throw DomainError("grids must be non-empty");
    if (methods.empty()) throw DomainError("method list must be non-empty");
    const int long_grids = (lambda_grid.size() > 1 ? 1 : 0) +
                           (theta_grid.size() > 1 ? 1 : 0) +
                           (m_grid.size() > 1 ? 1 : 0);
    if (long_grids > 1)
        throw DomainError("sweeps are one-dimensional: only one grid may "
                          "hold more than one value");
    for (const double l : lambda_grid)
        if (!(l > 0.0)) throw DomainError("lambda grid values must be > 0");
    for (const double t : theta_grid)
        if (!(t > 0.0)) throw DomainError("theta grid values must be > 0");
    for (const int m : m_grid)
        if (m < 0 || m > n_r - 1)
            throw DomainError("m grid values must lie in [0, n_r - 1]");
    if (output_format != "csv" && output_format != "json")
        throw DomainError("output_format must be csv or json");
}

ExperimentSpec preset_spec(const std::string& name) {
    ExperimentSpec spec;
    const std::vector<Method> figure_methods = {
        Method::exact_m0, Method::approx, Method::upper_alzer,
        Method::lower_jindal, Method::mc_exact};
    const std::vector<Method> curve_methods = {
        Method::approx, Method::upper_alzer, Method::lower_jindal,
        Method::mc_exact};
    if (name == "fig1l") {
        spec.network.lambda = 1e-2;
        spec.lambda_grid = {1e-2};
        spec.n_r = 10;
        spec.theta_grid = {1.0};
        spec.m_grid = parse_int_list("0..9");
        spec.methods = figure_methods;
    } else if (name == "fig1r") {
        spec.network.lambda = 2e-2;
        spec.lambda_grid = {2e-2};
        spec.n_r = 20;
        spec.theta_grid = {1.0};
        spec.m_grid = parse_int_list("0..19");
        spec.methods = figure_methods;
    } else if (name == "fig2") {
        spec.lambda_grid = {1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2, 1e-1};
        spec.n_r = 10;
        spec.theta_grid = {1.0};
        spec.m_grid = {5};
        spec.methods = curve_methods;
    } else if (name == "fig3") {
        spec.network.lambda = 1e-2;
        spec.lambda_grid = {1e-2};
        spec.n_r = 10;
        spec.theta_grid = {1e-2, 1e-1, 1.0, 1e1, 1e2};
        spec.m_grid = {5};
        spec.methods = curve_methods;
    } else if (name == "fig4") {
        spec.lambda_grid = {1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
        spec.n_r = 10;
        spec.theta_grid = {1.0};
        spec.m_grid = {0};
        spec.methods = {Method::approx};  // optimal-m derives its own curve
    } else {
        throw DomainError("unknown preset: '" + name + "'");
    }
    return spec;
}

void apply_kv(ExperimentSpec& spec, const std::string& key,
              const std::string& value) {
    if (key == "lambda") {
        const double v = parse_double(value);
        spec.network.lambda = v;
        spec.lambda_grid = {v};
    } else if (key == "lambda_grid") {
        spec.lambda_grid = parse_double_list(value);
    } else if (key == "alpha") {
        spec.network.alpha = parse_double(value);
    } else if (key == "rho0") {
        spec.network.rho0 = parse_double(value);
    } else if (key == "rho") {
        spec.network.rho = parse_double(value);
    } else if (key == "r0") {
        spec.network.r0 = parse_double(value);
    } else if (key == "n_r" || key == "nr") {
        spec.n_r = static_cast<int>(parse_int(value));
    } else if (key == "theta") {
        spec.theta_grid = {parse_double(value)};
    } else if (key == "theta_grid") {
        spec.theta_grid = parse_double_list(value);
    } else if (key == "m") {
        spec.m_grid = {static_cast<int>(parse_int(value))};
    } else if (key == "m_grid") {
        spec.m_grid = parse_int_list(value);
    } else if (key == "methods") {
        spec.methods = parse_methods(value);
    } else if (key == "trials") {
        spec.sim.trials = parse_int(value);
    } else if (key == "seed") {
        try {
            spec.sim.seed = std::stoull(value);
        } catch (const std::exception&) {
            throw DomainError("not a seed: '" + value + "'");
        }
    } else if (key == "window_points_target") {
        spec.sim.window_points_target = parse_double(value);
    } else if (key == "confidence_level") {
        spec.sim.confidence_level = parse_double(value);
    } else if (key == "output_path" || key == "output") {
        spec.output_path = value;
    } else if (key == "output_format" || key == "format") {
        spec.output_format = value;
    } else {
        throw DomainError("unknown config key: '" + key + "'");
    }
}

void apply_config_file(ExperimentSpec& spec, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(line_no) +
                              " is not 'key = value'");
        apply_kv(spec, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

std::vector<ResultRow> run_sweep(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<ResultRow> rows;
    for (const double lambda : spec.lambda_grid)
        for (const double theta : spec.theta_grid)
            for (const int m : spec.m_grid)
                for (const Method method : spec.methods) {
                    if (!method_defined(method, m, spec.network.alpha,
                                        spec.n_r))
                        continue;
                    NetworkParams net = spec.network;
                    net.lambda = lambda;
                    const PzfConfig cfg{spec.n_r, m};
                    ResultRow row;
                    row.network = net;
                    row.n_r = spec.n_r;
                    row.theta = theta;
                    row.m = m;
                    row.method = method;
                    try {
                        switch (method) {
                            case Method::exact_m0:
                                row.value = success_prob_exact_m0(
                                    net, spec.n_r, theta);
                                break;
                            case Method::approx:
                                row.value =
                                    success_prob_approx(net, cfg, theta);
                                break;
                            case Method::upper_alzer:
                                row.value = success_prob_upper_alzer(net, cfg,
                                                                     theta);
                                break;
                            case Method::lower_jindal:
                                row.value = success_prob_lower_jindal(
                                    net, cfg, theta);
                                break;
                            case Method::mc_exact:
                            case Method::mc_approx: {
                                SimConfig sim = spec.sim;
                                sim.model = method == Method::mc_exact
                                                ? SimModel::exact
                                                : SimModel::approx_dm;
                                const SuccessEstimate est =
                                    estimate_success(net, cfg, theta, sim);
                                row.value = est.p_hat;
                                row.is_mc = true;
                                row.ci_half_width = est.half_width;
                                row.trials = est.trials;
                                row.seed = est.seed;
                                break;
                            }
                        }
                    } catch (const NumericalFailure& e) {
                        throw NumericalFailure(
                            std::string(e.what()) + " [at " +
                            point_desc(lambda, theta, m, method) + "]");
                    }
                    rows.push_back(row);
                }
    return rows;
}

std::vector<OptimalRow> run_optimal_m(const ExperimentSpec& spec) {
    spec.validate();
    if (spec.theta_grid.size() != 1)
        throw DomainError("optimal-m sweeps density at a single theta");
    const double theta = spec.theta_grid.front();
    std::vector<OptimalRow> rows;
    for (const double lambda : spec.lambda_grid) {
        NetworkParams net = spec.network;
        net.lambda = lambda;
        try {
            const OptimalM opt = find_optimal_m(net, spec.n_r, theta);
            rows.push_back(
                OptimalRow{net, spec.n_r, theta, opt.m_star, opt.p_star});
        } catch (const NumericalFailure& e) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), " [at lambda=%.10g]", lambda);
            throw NumericalFailure(std::string(e.what()) + buf);
        }
    }
    return rows;
}

void write_sweep_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
    os << "lambda,alpha,rho0,rho,r0,n_r,theta,m,method,value,ci_half_width,"
          "trials,seed\n";
    for (const auto& row : rows) {
        std::string line;
        csv_params(line, row.network, row.n_r, row.theta);
        char buf[192];
        std::snprintf(buf, sizeof(buf), ",%d,%s,%.10g", row.m,
                      to_string(row.method).c_str(), row.value);
        line += buf;
        if (row.is_mc) {
            std::snprintf(buf, sizeof(buf), ",%.10g,%lld,%llu",
                          row.ci_half_width,
                          static_cast<long long>(row.trials),
                          static_cast<unsigned long long>(row.seed));
            line += buf;
        } else {
            line += ",,,";
        }
        os << line << '\n';
    }
}

void write_sweep_json(const ExperimentSpec& spec,
                      const std::vector<ResultRow>& rows,
                      double wall_time_seconds, std::ostream& os) {
    nlohmann::json doc;
    doc["command"] = "sweep";
    doc["spec"] = spec_json(spec);
    auto arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json j = {{"lambda", row.network.lambda},
                            {"alpha", row.network.alpha},
                            {"rho0", row.network.rho0},
                            {"rho", row.network.rho},
                            {"r0", row.network.r0},
                            {"n_r", row.n_r},
                            {"theta", row.theta},
                            {"m", row.m},
                            {"method", to_string(row.method)},
                            {"value", row.value}};
        if (row.is_mc) {
            j["ci_half_width"] = row.ci_half_width;
            j["trials"] = row.trials;
            j["seed"] = row.seed;
        } else {
            j["ci_half_width"] = nullptr;
            j["trials"] = nullptr;
            j["seed"] = nullptr;
        }
        arr.push_back(std::move(j));
    }
    doc["rows"] = std::move(arr);
    doc["wall_time_seconds"] = wall_time_seconds;
    os << doc.dump(2) << '\n';
}

void write_optimal_csv(const std::vector<OptimalRow>& rows,
                       std::ostream& os) {
    os << "lambda,alpha,rho0,rho,r0,n_r,theta,m_star,p_star\n";
    for (const auto& row : rows) {
        std::string line;
        csv_params(line, row.network, row.n_r, row.theta);
        char buf[64];
        std::snprintf(buf, sizeof(buf), ",%d,%.10g", row.m_star, row.p_star);
        line += buf;
        os << line << '\n';
    }
}

void write_optimal_json(const ExperimentSpec& spec,
                        const std::vector<OptimalRow>& rows,
                        double wall_time_seconds, std::ostream& os) {
    nlohmann::json doc;
    doc["command"] = "optimal-m";
    doc["spec"] = spec_json(spec);
    auto arr = nlohmann::json::array();
    for (const auto& row : rows)
        arr.push_back({{"lambda", row.network.lambda},
                       {"alpha", row.network.alpha},
                       {"rho0", row.network.rho0},
                       {"rho", row.network.rho},
                       {"r0", row.network.r0},
                       {"n_r", row.n_r},
                       {"theta", row.theta},
                       {"m_star", row.m_star},
                       {"p_star", row.p_star}});
    doc["rows"] = std::move(arr);
    doc["wall_time_seconds"] = wall_time_seconds;
    os << doc.dump(2) << '\n';
}

int cmd_validate(std::uint64_t seed, double kappa_scale, std::ostream& os) {
    struct Check {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Check> checks;
    const auto run = [&](const std::string& name,
                         const std::function<std::pair<bool, std::string>()>&
                             body) {
        try {
            const auto [pass, detail] = body();
            checks.push_back({name, pass, detail});
        } catch (const std::exception& e) {
            checks.push_back({name, false, std::string("threw: ") + e.what()});
        }
    };

    run("2f1 arctan identity", [&]() -> std::pair<bool, std::string> {
        const specfun::Hyp2F1Params p{1.0, 0.5, 1.5};
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double z = 100.0 * i / 999.0;
            const double got = specfun::gauss_2f1_negz(p, -z);
            const double want =
                z == 0.0 ? 1.0 : std::atan(std::sqrt(z)) / std::sqrt(z);
            worst = std::max(worst, std::abs(got - want));
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "max err %.3g", worst);
        return {worst <= 1e-10, buf};
    });

    run("transform vs quadrature", [&]() -> std::pair<bool, std::string> {
        struct Point {
            double lambda, alpha;
            int m;
            double s;
        };
        const Point points[] = {
            {1e-2, 4.0, 1, 1e4}, {1e-3, 3.0, 2, 10.0}, {2e-2, 6.0, 5, 1e3}};
        double worst = 0.0;
        for (const auto& pt : points) {
            NetworkParams net;
            net.lambda = pt.lambda;
            net.alpha = pt.alpha;
            const PzfConfig cfg{10, pt.m};
            const double direct =
                laplace_derivs_approx(net, cfg, pt.s, 0).values[0];
            const double byquad =
                std::exp(-2.0 * std::numbers::pi * net.lambda *
                         upsilon_by_quadrature(net, pt.m, pt.s));
            worst = std::max(worst,
                             std::abs(direct - byquad) / std::abs(byquad));
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "max rel err %.3g", worst);
        return {worst <= 1e-8, buf};
    });

    run("combiner gain laws", [&]() -> std::pair<bool, std::string> {
        const PzfConfig cfg{10, 3};
        SimConfig sim;
        sim.trials = 10000;
        sim.seed = seed;
        std::vector<double> s0, si;
        collect_combiner_gains(cfg, sim, &s0, &si);
        const double k = static_cast<double>(cfg.n_r - cfg.m);
        const double n = static_cast<double>(s0.size());
        double mean = 0.0;
        for (const double x : s0) mean += x;
        mean /= n;
        double var = 0.0;
        for (const double x : s0) var += (x - mean) * (x - mean);
        var /= n - 1.0;
        // Gamma(k,1): Var[X] = k, Var[sample var] ~ (mu4 - sigma^4)/n with
        // mu4 = 3k^2 + 6k.
        const double se_mean = std::sqrt(k / n);
        const double se_var = std::sqrt((3.0 * k * k + 6.0 * k - k * k) / n);
        const double ks = stats::ks_distance(
            si, [](double x) { return 1.0 - std::exp(-x); });
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "mean %.3f (want %.0f), var %.3f, KS %.4f", mean, k,
                      var, ks);
        const bool pass = std::abs(mean - k) <= 3.0 * se_mean &&
                          std::abs(var - k) <= 3.0 * se_var && ks <= 0.02;
        return {pass, buf};
    });

    run("analytic vs monte carlo", [&]() -> std::pair<bool, std::string> {
        NetworkParams net;
        SimConfig sim;
        sim.trials = 4000;
        sim.seed = seed;
        sim.model = SimModel::approx_dm;
        double worst_ratio = 0.0;
        for (const int m : {1, 5, 9}) {
            const PzfConfig cfg{10, m};
            const double want = success_prob_approx(net, cfg, 1.0);
            const SuccessEstimate est = estimate_success(net, cfg, 1.0, sim);
            worst_ratio = std::max(
                worst_ratio, std::abs(est.p_hat - want) / est.half_width);
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "worst |diff|/ci %.2f", worst_ratio);
        return {worst_ratio <= 1.0, buf};
    });

    run("upper bound ordering", [&]() -> std::pair<bool, std::string> {
        NetworkParams net;
        double worst = 0.0;
        for (int m = 1; m <= 9; ++m) {
            const PzfConfig cfg{10, m};
            const double upper = detail::upper_alzer_scaled(
                net, cfg, 1.0, kappa_scale, nullptr);
            const double approx = success_prob_approx(net, cfg, 1.0);
            worst = std::max(worst, approx - upper);
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "worst approx-upper %.3g", worst);
        return {worst <= 1e-12, buf};
    });

    run("rng known answers", [&]() -> std::pair<bool, std::string> {
        using A4 = std::array<std::uint32_t, 4>;
        const A4 zero = Philox4x32::block({0, 0, 0, 0}, {0, 0});
        const A4 ones = Philox4x32::block(
            {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
            {0xffffffffu, 0xffffffffu});
        const A4 pi = Philox4x32::block(
            {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
            {0xa4093822u, 0x299f31d0u});
        const bool pass =
            zero == A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u} &&
            ones == A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu} &&
            pi == A4{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u};
        return {pass, pass ? "3 vectors match" : "vector mismatch"};
    });

    run("determinism", [&]() -> std::pair<bool, std::string> {
        NetworkParams net;
        const PzfConfig cfg{10, 2};
        SimConfig sim;
        sim.trials = 2000;
        sim.seed = seed;
        sim.model = SimModel::gamma_shortcut;
        const SuccessEstimate a = estimate_success(net, cfg, 1.0, sim);
        const SuccessEstimate b = estimate_success(net, cfg, 1.0, sim);
        const bool pass = a.p_hat == b.p_hat;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "p_hat %.6g twice", a.p_hat);
        return {pass, buf};
    });

    bool all = true;
    std::string first_fail;
    for (const auto& c : checks) {
        os << "check " << c.name << ": " << (c.pass ? "pass" : "FAIL")
           << " (" << c.detail << ")\n";
        if (!c.pass && all) first_fail = c.name;
        all = all && c.pass;
    }
    if (!all) {
        os << "first failing check: " << first_fail << "\n";
        return 1;
    }
    os << "all checks passed\n";
    return 0;
}

}  // namespace pzf_udn
