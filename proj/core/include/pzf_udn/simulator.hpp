#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "pzf_udn/params.hpp"
#include "pzf_udn/philox.hpp"

// Monte Carlo engine: Poisson fields of interferers, Rayleigh channels, the
// projection combiner, and success-probability estimation with confidence
// intervals. Every trial draws from the substream keyed by (seed, trial
// index), so estimates are bit-identical for any worker count.

namespace pzf_udn {

// One field draw. Only distances matter (fading is isotropic), so angles are
// never generated. Radii are sorted ascending and bounded by window_radius,
// which is sized so the disk holds window_points_target points on average.
struct PppRealization {
    std::vector<double> distances;
    double window_radius = 0.0;
    std::int64_t count = 0;
};

// Channel vectors for one trial: entries are i.i.d. standard circularly
// symmetric complex Gaussians, one length-n_r vector per field point plus
// the desired link's vector.
struct ChannelDraw {
    std::vector<std::complex<double>> h0;
    std::vector<std::vector<std::complex<double>>> h_interferers;
};

PppRealization sample_ppp(const NetworkParams& params, const SimConfig& cfg,
                          std::uint64_t trial_index);

ChannelDraw sample_channels(int n_r, std::int64_t n_interferers,
                            PhiloxStream& stream);

// Unit-norm projection of h0 onto the orthogonal complement of the given
// channel vectors (modified Gram-Schmidt, one re-orthogonalization pass).
// Empty list reduces to maximum ratio combining. Throws
// DegenerateProjection if the projected vector's norm falls below
// 1e-12 * ||h0|| (the caller redraws the trial).
std::vector<std::complex<double>> pzf_combiner(
    const std::vector<std::complex<double>>& h0,
    const std::vector<std::vector<std::complex<double>>>& h_nearest);

// SIR of the physical model: combiner built from the cfg.m nearest points,
// every uncancelled point contributes |v^H h_i|^2 X_i^{-alpha}. Returns
// +infinity when no uncancelled interferer exists in the window.
double sir_exact(const NetworkParams& params, const PzfConfig& cfg,
                 const PppRealization& ppp, const ChannelDraw& ch);

// SIR of the distance-threshold model: interference from points beyond the
// mean m-th distance d_m only, with the combiner replaced by its effect
// laws (signal gain Gamma(n_r - m, 1), interferer gains unit exponential).
// Draws those laws from the stream, so no channel vectors are needed.
double sir_approx(const NetworkParams& params, const PzfConfig& cfg,
                  const PppRealization& ppp, PhiloxStream& stream);

SuccessEstimate estimate_success(const NetworkParams& params,
                                 const PzfConfig& cfg, double theta,
                                 const SimConfig& sim);

// Mean of the m-th nearest distance over sim.trials field draws. Enlarges
// the window once if the count could plausibly fall short of m.
double empirical_mth_distance(const NetworkParams& params, int m,
                              const SimConfig& sim);

// Per-trial combiner gains through the real linear-algebra path: s0 receives
// |v^H h0|^2 and si the gain of one uncancelled interferer. Geometry never
// enters these laws, so no field is drawn. Either output may be null.
void collect_combiner_gains(const PzfConfig& cfg, const SimConfig& sim,
                            std::vector<double>* s0, std::vector<double>* si);

namespace detail {

// Stream-level sampler shared by every consumer, so a field draw costs the
// same stream offsets everywhere. Reuses out.distances' capacity.
void sample_ppp_stream(const NetworkParams& params,
                       double window_points_target, PhiloxStream& stream,
                       PppRealization& out);

// Worker count honoring the PZF_UDN_THREADS cap.
int worker_count();

}  // namespace detail

}  // namespace pzf_udn
