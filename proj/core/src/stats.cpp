#include "pzf_udn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pzf_udn/errors.hpp"

namespace pzf_udn::stats {

double inv_norm_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) return std::numeric_limits<double>::quiet_NaN();
    static const double a1 = -39.69683028665376, a2 = 220.9460984245205,
                        a3 = -275.9285104469687, a4 = 138.3577518672690,
                        a5 = -30.66479806614716, a6 = 2.506628277459239;
    static const double b1 = -54.47609879822406, b2 = 161.5858368580409,
                        b3 = -155.6989798598866, b4 = 66.80131188771972,
                        b5 = -13.28068155288572;
    static const double c1 = -7.784894002430293e-03, c2 = -3.223964580411365e-01,
                        c3 = -2.400758277161838, c4 = -2.549732539343734,
                        c5 = 4.374664141464968, c6 = 2.938163982698783;
    static const double d1 = 7.784695709041462e-03, d2 = 3.224671290700398e-01,
                        d3 = 2.445134137142996, d4 = 3.754408661907416;
    const double plow = 0.02425, phigh = 1 - plow;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2 * std::log(p));
        return (((((c1 * q + c2) * q + c3) * q + c4) * q + c5) * q + c6) /
               (((((d1 * q + d2) * q + d3) * q + d4) * q) + 1);
    }
    if (p > phigh) {
        q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c1 * q + c2) * q + c3) * q + c4) * q + c5) * q + c6) /
               (((((d1 * q + d2) * q + d3) * q + d4) * q) + 1);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a1 * r + a2) * r + a3) * r + a4) * r + a5) * r + a6) * q /
           (((((b1 * r + b2) * r + b3) * r + b4) * r + b5) * r + 1);
}

double normal_half_width(double p_hat, std::int64_t n, double z) {
    if (n <= 0) throw DomainError("half-width requires n > 0");
    return z * std::sqrt(std::max(p_hat * (1.0 - p_hat), 0.0) / double(n));
}

double wilson_half_width(double p_hat, std::int64_t n, double z) {
    if (n <= 0) throw DomainError("half-width requires n > 0");
    const double nn = double(n);
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p_hat + z2 / (2.0 * nn)) / denom;
    const double half =
        z * std::sqrt(p_hat * (1.0 - p_hat) / nn + z2 / (4.0 * nn * nn)) / denom;
    const double lo = center - half, hi = center + half;
    return std::max(std::abs(hi - p_hat), std::abs(p_hat - lo));
}

double ci_half_width(double p_hat, std::int64_t n, double confidence_level) {
    const double z = inv_norm_cdf(0.5 + confidence_level / 2.0);
    if (p_hat * (1.0 - p_hat) * double(n) < 25.0)
        return wilson_half_width(p_hat, n, z);
    return normal_half_width(p_hat, n, z);
}

double ks_distance(std::vector<double>& samples,
                   const std::function<double(double)>& cdf) {
    if (samples.empty()) throw DomainError("ks_distance requires samples");
    std::sort(samples.begin(), samples.end());
    const double n = double(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(double(i + 1) / n - f));
        d = std::max(d, std::abs(f - double(i) / n));
    }
    return d;
}

double poisson_cdf(double mu, std::int64_t k) {
    if (!(mu > 0.0)) throw DomainError("poisson_cdf requires mu > 0");
    if (k < 0) return 0.0;
    // log P(N = j) = j log mu - mu - lgamma(j + 1); rescale by the largest.
    double max_log = -std::numeric_limits<double>::infinity();
    std::vector<double> logs(std::size_t(k) + 1);
    for (std::int64_t j = 0; j <= k; ++j) {
        logs[std::size_t(j)] = double(j) * std::log(mu) - mu - std::lgamma(double(j) + 1.0);
        max_log = std::max(max_log, logs[std::size_t(j)]);
    }
    if (max_log == -std::numeric_limits<double>::infinity()) return 0.0;
    double acc = 0.0;
    for (double l : logs) acc += std::exp(l - max_log);
    return std::exp(max_log) * acc;
}

}  // namespace pzf_udn::stats
