#include "pzf_udn/analytic.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>

#include "pzf_udn/errors.hpp"
#include "pzf_udn/specfun.hpp"

namespace pzf_udn {

using specfun::gauss_2f1_derivs;
using specfun::gauss_2f1_negz;
using specfun::Hyp2F1Params;
using specfun::log_gamma;

namespace {

constexpr double kPi = std::numbers::pi;

// Result of summing nonnegative probability masses; tiny excursions outside
// [0, 1] are rounding, anything larger is a genuine evaluation failure.
double finish_probability(double sum, const char* what) {
    if (sum < -1e-9 || sum > 1.0 + 1e-9) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s out of range: %.17g", what, sum);
        throw NumericalFailure(buf);
    }
    if (sum < 0.0) return 0.0;
    if (sum > 1.0) return 1.0;
    return sum;
}

void require_positive_s(double s) {
    if (!(s > 0.0)) throw DomainError("Laplace argument s must be positive");
}

void require_order(int n_max) {
    if (n_max < 0 || n_max > 64)
        throw DomainError("derivative order n_max must lie in [0, 64]");
}

// Scaled log-transform derivatives G_k = (-s)^k g^(k)(s) / k!, k = 1..n_max,
// for g(s) = -2 pi lambda Upsilon(s, M). G[0] slot holds g(s) itself.
// Complete monotonicity of the transform makes every G_k >= 0.
std::vector<double> scaled_g_approx(const NetworkParams& params, int m,
                                    double s, int n_max) {
    const double d = mean_mth_distance(params, m);
    const double alpha = params.alpha;
    const double w = s * params.rho * std::pow(d, -alpha);
    const double pre = 2.0 * kPi * params.lambda * params.rho *
                       std::pow(d, 2.0 - alpha) / (alpha - 2.0) * s;

    const auto hyp = Hyp2F1Params::from_alpha(alpha);
    const std::vector<double> f = gauss_2f1_derivs(hyp, -w, n_max);

    std::vector<double> g(static_cast<std::size_t>(n_max) + 1);
    g[0] = -pre * f[0];

    // P_k = w^k F^(k)(-w) / k!, built as a running ratio so neither w^k nor
    // k! is formed on its own. The F^(k) are positive; once one underflows
    // to zero every later P_k is zero as well.
    double p_prev = f[0];
    for (int k = 1; k <= n_max; ++k) {
        const std::size_t uk = static_cast<std::size_t>(k);
        double p_k = 0.0;
        if (f[uk - 1] > 0.0 && p_prev > 0.0)
            p_k = p_prev * (w / k) * (f[uk] / f[uk - 1]);
        const double g_k = pre * (p_prev - p_k);
        if (g_k < -1e-12 * pre * p_prev)
            throw NumericalFailure("scaled log-derivative turned negative");
        g[uk] = g_k < 0.0 ? 0.0 : g_k;
        p_prev = p_k;
    }
    return g;
}

// Same layout for the exact M = 0 transform, where g(s) = -C s^q with
// q = 2/alpha. Here G_n = C s^q B_n with B_1 = q, B_n = B_{n-1} (n-1-q)/n,
// a positive sequence for q in (0, 1).
std::vector<double> scaled_g_exact_m0(const NetworkParams& params, double s,
                                      int n_max) {
    const double q = 2.0 / params.alpha;
    const double e = 2.0 * kPi * kPi * params.lambda *
                     std::pow(s * params.rho, q) /
                     (params.alpha * std::sin(2.0 * kPi / params.alpha));
    std::vector<double> g(static_cast<std::size_t>(n_max) + 1);
    g[0] = -e;
    double b = q;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) b *= (n - 1 - q) / n;
        g[static_cast<std::size_t>(n)] = e * b;
    }
    return g;
}

// T_n = (-s)^n L^(n)(s) / n! from the scaled log-derivatives: the
// exponential-composition recurrence restated in scaled form,
// T_n = (1/n) sum_{k=1}^{n} k G_k T_{n-k}, T_0 = exp(g). All terms are
// nonnegative, so the recurrence never cancels.
std::vector<double> scaled_terms(const std::vector<double>& g) {
    const std::size_t n_max = g.size() - 1;
    std::vector<double> t(n_max + 1);
    t[0] = std::exp(g[0]);
    for (std::size_t n = 1; n <= n_max; ++n) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k)
            acc += static_cast<double>(k) * g[k] * t[n - k];
        t[n] = acc / static_cast<double>(n);
    }
    return t;
}

// Raw derivatives values[n] = d^n/ds^n L(s) = (-1)^n n! s^{-n} T_n.
std::vector<double> unscale(const std::vector<double>& t, double s) {
    std::vector<double> values(t.size());
    double factor = 1.0;
    for (std::size_t n = 0; n < t.size(); ++n) {
        if (n > 0) factor *= -static_cast<double>(n) / s;
        values[n] = factor * t[n];
    }
    return values;
}

double sum_terms(const std::vector<double>& t) {
    double acc = 0.0;
    for (double v : t) acc += v;
    return acc;
}

}  // namespace

double mean_mth_distance(const NetworkParams& params, int m) {
    params.validate();
    if (m < 1) throw DomainError("mean distance requires m >= 1");
    const double lg = log_gamma(m + 0.5) - log_gamma(static_cast<double>(m));
    return std::exp(lg) / std::sqrt(kPi * params.lambda);
}

double laplace_exact_m0(const NetworkParams& params, double s) {
    params.validate();
    require_positive_s(s);
    const double q = 2.0 / params.alpha;
    const double exponent = -2.0 * kPi * kPi * params.lambda *
                            std::pow(s * params.rho, q) /
                            (params.alpha * std::sin(2.0 * kPi / params.alpha));
    return std::exp(exponent);
}

double upsilon(const NetworkParams& params, int m, double s) {
    params.validate();
    require_positive_s(s);
    const double d = mean_mth_distance(params, m);
    const double alpha = params.alpha;
    const double z = -s * params.rho * std::pow(d, -alpha);
    const double f = gauss_2f1_negz(Hyp2F1Params::from_alpha(alpha), z);
    return s * params.rho * std::pow(d, 2.0 - alpha) / (alpha - 2.0) * f;
}

LaplaceDerivs laplace_derivs_exact_m0(const NetworkParams& params, double s,
                                      int n_max) {
    params.validate();
    require_positive_s(s);
    require_order(n_max);
    const auto t = scaled_terms(scaled_g_exact_m0(params, s, n_max));
    return LaplaceDerivs{s, unscale(t, s), LaplaceDerivs::Model::exact_m0};
}

LaplaceDerivs laplace_derivs_approx(const NetworkParams& params,
                                    const PzfConfig& cfg, double s,
                                    int n_max) {
    params.validate();
    cfg.validate();
    if (cfg.m < 1)
        throw DomainError("approximate transform requires m >= 1");
    require_positive_s(s);
    require_order(n_max);
    const auto t = scaled_terms(scaled_g_approx(params, cfg.m, s, n_max));
    return LaplaceDerivs{s, unscale(t, s), LaplaceDerivs::Model::approx_dm};
}

double success_prob_exact_m0(const NetworkParams& params, int n_r,
                             double theta) {
    if (n_r < 1) throw DomainError("n_r must be >= 1");
    const double s = params.s_of_theta(theta);
    const auto t = detail::scaled_summands_exact_m0(params, s, n_r - 1);
    return finish_probability(sum_terms(t), "exact M=0 success probability");
}

double success_prob_approx(const NetworkParams& params, const PzfConfig& cfg,
                           double theta) {
    cfg.validate();
    if (cfg.m < 1)
        throw DomainError(
            "approximate success probability requires m >= 1; use the exact "
            "form at m = 0");
    const double s = params.s_of_theta(theta);
    const auto t =
        detail::scaled_summands_approx(params, cfg.m, s, cfg.n_r - cfg.m - 1);
    return finish_probability(sum_terms(t), "approximate success probability");
}

double success_prob(const NetworkParams& params, const PzfConfig& cfg,
                    double theta) {
    cfg.validate();
    if (cfg.m == 0) return success_prob_exact_m0(params, cfg.n_r, theta);
    return success_prob_approx(params, cfg, theta);
}

double success_prob_upper_alzer(const NetworkParams& params,
                                const PzfConfig& cfg, double theta) {
    detail::AlzerDiagnostics diag;
    const double raw =
        detail::upper_alzer_scaled(params, cfg, theta, 1.0, &diag);
    if (diag.conditioning_warning)
        std::cerr << "warning: upper-bound alternating sum poorly "
                     "conditioned (max term "
                  << diag.max_term << ", result " << raw << ")\n";
    const double upper = finish_probability(raw, "upper bound");
    const double approx = success_prob_approx(params, cfg, theta);
    if (upper < approx - 1e-9)
        throw NumericalFailure(
            "upper bound fell below the value it must dominate");
    return upper;
}

double success_prob_lower_jindal(const NetworkParams& params,
                                 const PzfConfig& cfg, double theta) {
    params.validate();
    cfg.validate();
    const double s = params.s_of_theta(theta);
    const int half = static_cast<int>(std::ceil(params.alpha / 2.0));
    const int m_lo = half + 1;
    const int m_hi = cfg.n_r - 2;
    if (cfg.m < m_lo || cfg.m > m_hi) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "lower bound undefined at m=%d (valid window [%d, %d])",
                      cfg.m, m_lo, m_hi);
        throw NotDefinedError(buf);
    }
    const double a2 = params.alpha / 2.0;
    const double term = s * params.rho * std::pow(kPi * params.lambda, a2) /
                        (a2 - 1.0) *
                        std::pow(static_cast<double>(cfg.m - half), 1.0 - a2) /
                        static_cast<double>(cfg.n_r - cfg.m - 1);
    return 1.0 - term;
}

double lower_bound_maximizer(double alpha, int n_r) {
    if (!(alpha > 2.0)) throw DomainError("alpha must exceed 2");
    const double half = std::ceil(alpha / 2.0);
    if (n_r < static_cast<int>(half) + 3)
        throw DomainError("n_r too small for the lower-bound window");
    return (1.0 - 2.0 / alpha) * (n_r - 1) + (2.0 / alpha) * half;
}

std::vector<std::vector<double>> success_matrix(const NetworkParams& params,
                                                int n_r, double theta) {
    if (n_r < 2) throw DomainError("success matrix requires n_r >= 2");
    const double s = params.s_of_theta(theta);
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n_r));
    for (int i = 1; i <= n_r; ++i) {
        const int m = n_r - i;
        auto t = m == 0
                     ? detail::scaled_summands_exact_m0(params, s, i - 1)
                     : detail::scaled_summands_approx(params, m, s, i - 1);
        t.resize(static_cast<std::size_t>(n_r), 0.0);
        rows[static_cast<std::size_t>(i - 1)] = std::move(t);
    }
    return rows;
}

OptimalM find_optimal_m(const NetworkParams& params, int n_r, double theta) {
    if (n_r < 1) throw DomainError("n_r must be >= 1");
    OptimalM best{0, success_prob_exact_m0(params, n_r, theta)};
    for (int m = 1; m < n_r; ++m) {
        const double p =
            success_prob_approx(params, PzfConfig{n_r, m}, theta);
        if (p > best.p_star) best = OptimalM{m, p};
    }
    return best;
}

namespace detail {

std::vector<double> scaled_summands_exact_m0(const NetworkParams& params,
                                             double s, int n_max) {
    params.validate();
    require_positive_s(s);
    require_order(n_max);
    return scaled_terms(scaled_g_exact_m0(params, s, n_max));
}

std::vector<double> scaled_summands_approx(const NetworkParams& params, int m,
                                           double s, int n_max) {
    params.validate();
    if (m < 1) throw DomainError("approximate model requires m >= 1");
    require_positive_s(s);
    require_order(n_max);
    return scaled_terms(scaled_g_approx(params, m, s, n_max));
}

std::vector<double> log_laplace_derivs_approx(const NetworkParams& params,
                                              int m, double s, int n_max) {
    params.validate();
    if (m < 1) throw DomainError("approximate model requires m >= 1");
    require_positive_s(s);
    require_order(n_max);
    const auto g = scaled_g_approx(params, m, s, n_max);
    std::vector<double> raw(g.size());
    raw[0] = g[0];
    double factor = 1.0;
    for (std::size_t k = 1; k < g.size(); ++k) {
        factor *= -static_cast<double>(k) / s;
        raw[k] = factor * g[k];
    }
    return raw;
}

double upper_alzer_scaled(const NetworkParams& params, const PzfConfig& cfg,
                          double theta, double kappa_scale,
                          AlzerDiagnostics* diag) {
    params.validate();
    cfg.validate();
    if (cfg.m < 1) throw DomainError("upper bound requires m >= 1");
    if (!(kappa_scale > 0.0)) throw DomainError("kappa_scale must be positive");
    const double s = params.s_of_theta(theta);
    const int l = cfg.n_r - cfg.m;
    const double kappa =
        std::exp(-log_gamma(static_cast<double>(l) + 1.0) / l) * kappa_scale;

    // Alternating binomial sum over the transform at j * kappa * s. Kahan
    // compensation plus a conditioning flag guard the cancellation that sets
    // in once the binomial coefficients dwarf the result.
    double sum = 0.0, comp = 0.0, max_term = 0.0, binom = 1.0;
    for (int j = 1; j <= l; ++j) {
        binom *= static_cast<double>(l - j + 1) / j;
        const double transform =
            std::exp(-2.0 * kPi * params.lambda *
                     upsilon(params, cfg.m, j * kappa * s));
        const double term = (j % 2 == 1 ? binom : -binom) * transform;
        max_term = std::max(max_term, std::abs(term));
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    if (diag != nullptr) {
        diag->max_term = max_term;
        diag->conditioning_warning =
            max_term > 1e12 * std::max(std::abs(sum), 1e-300);
    }
    return sum;
}

}  // namespace detail

}  // namespace pzf_udn
