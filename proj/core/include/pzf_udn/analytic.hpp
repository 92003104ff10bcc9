#pragma once

#include <vector>

#include "pzf_udn/params.hpp"

// Closed-form and semi-closed-form success probabilities for the partial
// zero-forcing receiver in a Poisson field, plus the Laplace transforms of
// the residual interference and their derivatives.
//
// Throughout, the Laplace argument is s = theta * rho0^{-1} * r0^alpha and
// every success probability is the truncated derivative sum
//
//   P(theta, M) = sum_{n=0}^{N_R-M-1} (-s)^n / n! * d^n/ds^n L(s)
//
// evaluated against either the exact M=0 transform or the distance-threshold
// approximate transform (M >= 1).

namespace pzf_udn {

// d_M: mean distance to the M-th nearest point of the process.
double mean_mth_distance(const NetworkParams& params, int m);

// Interference Laplace transform with no cancellation (M = 0), closed form.
double laplace_exact_m0(const NetworkParams& params, double s);

// Upsilon(s, M): exponent kernel of the approximate transform, so that
// L(s) = exp(-2 pi lambda Upsilon(s, M)).
double upsilon(const NetworkParams& params, int m, double s);

// Derivatives d^n/ds^n of the respective Laplace transforms, orders 0..n_max.
LaplaceDerivs laplace_derivs_exact_m0(const NetworkParams& params, double s,
                                      int n_max);
LaplaceDerivs laplace_derivs_approx(const NetworkParams& params,
                                    const PzfConfig& cfg, double s, int n_max);

// Success probabilities. The dispatcher picks the exact form at m = 0 and the
// approximate form at m >= 1.
double success_prob_exact_m0(const NetworkParams& params, int n_r,
                             double theta);
double success_prob_approx(const NetworkParams& params, const PzfConfig& cfg,
                           double theta);
double success_prob(const NetworkParams& params, const PzfConfig& cfg,
                    double theta);

// Alzer-inequality upper bound on the approximate success probability.
// Throws NumericalFailure if the computed bound falls below the approximate
// value it is supposed to dominate.
double success_prob_upper_alzer(const NetworkParams& params,
                                const PzfConfig& cfg, double theta);

// Closed-form lower bound; defined only for m in
// [ceil(alpha/2) + 1, n_r - 2] and may be negative (stored unclamped).
double success_prob_lower_jindal(const NetworkParams& params,
                                 const PzfConfig& cfg, double theta);

// Continuous maximizer of the lower bound over M.
double lower_bound_maximizer(double alpha, int n_r);

// Lower-triangular matrix whose row i (1-based) holds the summands of the
// success probability at M = n_r - i; row n_r substitutes the exact M = 0
// summands since the approximate model needs M >= 1. Row sums reproduce the
// corresponding success_prob_* values bit-for-bit.
std::vector<std::vector<double>> success_matrix(const NetworkParams& params,
                                                int n_r, double theta);

struct OptimalM {
    int m_star;
    double p_star;
};

// Exhaustive argmax of success_prob over M in {0, .., n_r - 1}; ties go to
// the smallest M.
OptimalM find_optimal_m(const NetworkParams& params, int n_r, double theta);

namespace detail {

// Scaled summands T_n = (-s)^n / n! * d^n/ds^n L(s). All nonnegative; their
// sum is the success probability. Exposed for the matrix build and tests.
std::vector<double> scaled_summands_exact_m0(const NetworkParams& params,
                                             double s, int n_max);
std::vector<double> scaled_summands_approx(const NetworkParams& params, int m,
                                           double s, int n_max);

// Raw derivatives g^(k), k = 0..n_max, of the approximate log-transform
// g(s) = -2 pi lambda Upsilon(s, M). Quadrature cross-check hook.
std::vector<double> log_laplace_derivs_approx(const NetworkParams& params,
                                              int m, double s, int n_max);

struct AlzerDiagnostics {
    double max_term = 0.0;
    bool conditioning_warning = false;
};

// Alzer sum with the kappa constant multiplied by kappa_scale. kappa_scale
// values other than 1 break the bound on purpose (fault-injection hook for
// the validation command); no ordering check is applied here.
double upper_alzer_scaled(const NetworkParams& params, const PzfConfig& cfg,
                          double theta, double kappa_scale,
                          AlzerDiagnostics* diag);

}  // namespace detail

}  // namespace pzf_udn
