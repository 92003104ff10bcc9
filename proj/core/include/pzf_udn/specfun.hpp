#pragma once

// Special-function kernels for the analytic formulas: log-gamma and the
// Gauss hypergeometric function 2F1 on the negative real axis, with
// arbitrary-order derivatives via the parameter-shift identity.

#include <vector>

#include "pzf_udn/errors.hpp"

namespace pzf_udn::specfun {

// Safe region for this artifact: all three parameters in (0, 40]. Wide
// enough for the derivative ladder at n_r <= 32 (a + k <= 1 + 31).
struct Hyp2F1Params {
    double a;
    double b;
    double c;

    void validate() const;

    // The parameter family of the interference Laplace transform.
    static Hyp2F1Params from_alpha(double alpha) {
        return {1.0, 1.0 - 2.0 / alpha, 2.0 - 2.0 / alpha};
    }
};

// ln Gamma(x), x > 0. Relative error well under 1e-13 on [0.5, 171].
double log_gamma(double x);

// 2F1(a, b; c; z) for z <= 0.
//
// Two regimes: the Pfaff transformation (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))
// whose series has argument in [0, 1) and positive terms, and, for the
// c = b + 1 family at z < -64, the exact inversion
//   2F1(a,b;b+1;z) = b/(b-a) (-z)^{-a} 2F1(a, a-b; a-b+1; 1/z)
//                  + Gamma(b+1)Gamma(a-b)/Gamma(a) (-z)^{-b}
// (a > b, a - b not an integer), whose inner function is again of the
// c = b + 1 family with |1/z| < 1/64. The Pfaff series alone needs about
// 32 (1 + |z|) terms, so it cannot reach the term cap below the switch
// point; outside the family, large |z| reports NumericalFailure.
double gauss_2f1_negz(const Hyp2F1Params& p, double z);

// (F(z), F'(z), ..., F^(n_max)(z)) using
// F^(k)(z) = ((a)_k (b)_k / (c)_k) 2F1(a+k, b+k, c+k, z).
std::vector<double> gauss_2f1_derivs(const Hyp2F1Params& p, double z, int n_max);

}  // namespace pzf_udn::specfun
