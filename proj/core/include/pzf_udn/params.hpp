#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pzf_udn/errors.hpp"

namespace pzf_udn {

// Physical scenario: interferer density lambda (nodes/m^2), pathloss
// exponent alpha (> 2 so far-field interference is summable), transmit
// powers rho0 (desired link) and rho (interferers) in watts, and the fixed
// link distance r0 in meters.
struct NetworkParams {
    double lambda = 1e-2;
    double alpha = 4.0;
    double rho0 = 1.0;
    double rho = 1.0;
    double r0 = 10.0;

    void validate() const {
        if (!(lambda > 0.0)) throw DomainError("lambda must be > 0");
        if (!(alpha > 2.0)) throw DomainError("alpha must be > 2");
        if (!(rho0 > 0.0)) throw DomainError("rho0 must be > 0");
        if (!(rho > 0.0)) throw DomainError("rho must be > 0");
        if (!(r0 > 0.0)) throw DomainError("r0 must be > 0");
    }

    // Laplace argument of the success-probability theorems.
    double s_of_theta(double theta) const;
};

// Receiver description: n_r antennas, m cancelled interferers.
// m = 0 is MRC, m = n_r - 1 is full zero forcing.
struct PzfConfig {
    int n_r = 10;
    int m = 0;

    void validate() const {
        if (n_r < 1 || n_r > 32) throw DomainError("n_r must be in [1, 32]");
        if (m < 0 || m > n_r - 1) throw DomainError("m must be in [0, n_r - 1]");
    }
};

enum class SimModel { exact, approx_dm, gamma_shortcut };

inline std::string to_string(SimModel m) {
    switch (m) {
        case SimModel::exact: return "exact";
        case SimModel::approx_dm: return "approx_dm";
        case SimModel::gamma_shortcut: return "gamma_shortcut";
    }
    return "?";
}

inline SimModel sim_model_from_string(const std::string& s) {
    if (s == "exact") return SimModel::exact;
    if (s == "approx_dm") return SimModel::approx_dm;
    if (s == "gamma_shortcut") return SimModel::gamma_shortcut;
    throw DomainError("unknown simulation model: " + s);
}

struct SimConfig {
    std::int64_t trials = 10000;
    std::uint64_t seed = 1;
    double window_points_target = 2000.0;  // expected PPP count in the disk
    SimModel model = SimModel::exact;
    double confidence_level = 0.99;

    void validate() const {
        if (trials < 100) throw DomainError("trials must be >= 100");
        if (!(window_points_target >= 500.0))
            throw DomainError("window_points_target must be >= 500");
        if (!(confidence_level > 0.0 && confidence_level < 1.0))
            throw DomainError("confidence_level must be in (0, 1)");
    }
};

struct SuccessEstimate {
    double p_hat = 0.0;
    double half_width = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    SimModel model_tag = SimModel::exact;
    std::int64_t degenerate_redraws = 0;
};

// Laplace transform of the interference and its first n derivatives at one
// argument s. Signs alternate: (-1)^n values[n] >= 0 (complete monotonicity).
struct LaplaceDerivs {
    enum class Model { exact_m0, approx_dm };
    double s = 0.0;
    std::vector<double> values;  // values[n] = d^n/ds^n L(s)
    Model model_tag = Model::exact_m0;
};

struct SuccessCurve {
    double threshold = 1.0;
    std::vector<std::pair<int, double>> points;  // (M, probability)
    std::string method_tag;
};

inline double NetworkParams::s_of_theta(double theta) const {
    if (!(theta > 0.0)) throw DomainError("theta must be > 0");
    double s = theta / rho0;
    // r0^alpha in one pow; alpha is not necessarily integral.
    return s * std::pow(r0, alpha);
}

}  // namespace pzf_udn
