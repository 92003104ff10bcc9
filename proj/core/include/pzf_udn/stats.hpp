#pragma once

// Small statistics toolbox shared by the simulator, the self-check command
// and the experiment engine.

#include <cstdint>
#include <functional>
#include <vector>

namespace pzf_udn::stats {

// Inverse standard normal CDF (Acklam approximation, |rel err| < 1.2e-9).
double inv_norm_cdf(double p);

// Normal-approximation CI half-width for a Bernoulli mean.
double normal_half_width(double p_hat, std::int64_t n, double z);

// Wilson score interval half-width (max distance from p_hat to either
// Wilson bound); used where the normal approximation is unreliable.
double wilson_half_width(double p_hat, std::int64_t n, double z);

// CI half-width policy: normal approximation, Wilson substituted when
// p_hat (1 - p_hat) n < 25.
double ci_half_width(double p_hat, std::int64_t n, double confidence_level);

// Kolmogorov-Smirnov distance between a sample (will be sorted in place)
// and a continuous CDF.
double ks_distance(std::vector<double>& samples,
                   const std::function<double(double)>& cdf);

// P(Poisson(mu) <= k), computed in log space so large mu underflows to 0
// instead of producing NaN.
double poisson_cdf(double mu, std::int64_t k);

}  // namespace pzf_udn::stats
