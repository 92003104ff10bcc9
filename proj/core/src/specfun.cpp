#include "pzf_udn/specfun.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace pzf_udn::specfun {

namespace {

constexpr double kRelTol = 1e-14;
constexpr int kTermCap = 10000;
constexpr double kInversionSwitch = 64.0;

std::string point_str(const Hyp2F1Params& p, double z) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "a=%.17g b=%.17g c=%.17g z=%.17g", p.a, p.b,
                  p.c, z);
    return buf;
}

// Pfaff-transformed series: zeta = z/(z-1) in [0, 1), all terms positive.
double pfaff_series(const Hyp2F1Params& p, double z) {
    const double w = -z;
    const double zeta = w / (1.0 + w);
    double term = 1.0;
    double acc = 1.0;
    for (int j = 0; j < kTermCap; ++j) {
        term *= zeta * (p.a + j) * (p.c - p.b + j) / ((p.c + j) * (1.0 + j));
        acc += term;
        if (term <= kRelTol * acc)
            return std::exp(-p.a * std::log1p(w)) * acc;
    }
    throw NumericalFailure("2F1 Pfaff series hit the " +
                           std::to_string(kTermCap) + "-term cap at " +
                           point_str(p, z));
}

bool near_integer(double x, double tol) {
    return std::abs(x - std::round(x)) <= tol;
}

}  // namespace

void Hyp2F1Params::validate() const {
    const bool ok = a > 0.0 && a <= 40.0 && b > 0.0 && b <= 40.0 && c > 0.0 &&
                    c <= 40.0;
    if (!ok)
        throw DomainError("2F1 parameters outside the safe region (0, 40]: " +
                          point_str(*this, 0.0));
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
    return std::lgamma(x);
}

double gauss_2f1_negz(const Hyp2F1Params& p, double z) {
    p.validate();
    if (z > 0.0) throw DomainError("gauss_2f1_negz requires z <= 0, got " +
                                   std::to_string(z));
    if (z == 0.0) return 1.0;
    const double w = -z;
    const bool family = std::abs(p.c - p.b - 1.0) <= 1e-9;
    const double ab = p.a - p.b;
    if (w > kInversionSwitch && family && ab > 1e-6 && !near_integer(ab, 1e-6)) {
        const Hyp2F1Params inner{p.a, ab, ab + 1.0};
        const double f2 = gauss_2f1_negz(inner, 1.0 / z);
        const double t1 = (p.b / (p.b - p.a)) * std::exp(-p.a * std::log(w)) * f2;
        const double t2 = std::exp(log_gamma(p.b + 1.0) + log_gamma(ab) -
                                   log_gamma(p.a) - p.b * std::log(w));
        return t1 + t2;
    }
    return pfaff_series(p, z);
}

std::vector<double> gauss_2f1_derivs(const Hyp2F1Params& p, double z, int n_max) {
    if (n_max < 0) throw DomainError("gauss_2f1_derivs requires n_max >= 0");
    if (n_max > 64) throw DomainError("gauss_2f1_derivs order cap is 64");
    std::vector<double> out;
    out.reserve(std::size_t(n_max) + 1);
    out.push_back(gauss_2f1_negz(p, z));
    double factor = 1.0;  // (a)_k (b)_k / (c)_k, built incrementally
    for (int k = 1; k <= n_max; ++k) {
        factor *= (p.a + k - 1) * (p.b + k - 1) / (p.c + k - 1);
        const Hyp2F1Params shifted{p.a + k, p.b + k, p.c + k};
        try {
            out.push_back(factor * gauss_2f1_negz(shifted, z));
        } catch (const NumericalFailure& e) {
            throw NumericalFailure("2F1 derivative order " + std::to_string(k) +
                                   ": " + e.what());
        }
    }
    return out;
}

}  // namespace pzf_udn::specfun
