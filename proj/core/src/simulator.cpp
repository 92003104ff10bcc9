#include "pzf_udn/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <random>
#include <thread>

#include "pzf_udn/analytic.hpp"
#include "pzf_udn/errors.hpp"
#include "pzf_udn/stats.hpp"

namespace pzf_udn {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kDegenerateTol = 1e-12;
constexpr int kMaxRedrawsPerTrial = 100;

using cvec = std::vector<std::complex<double>>;

// r^{-alpha}; integral alpha gets repeated squaring, the common case in
// every sweep (alpha = 4).
double pathloss(double r, double alpha) {
    if (alpha == 4.0) {
        const double r2 = r * r;
        return 1.0 / (r2 * r2);
    }
    const double ia = std::floor(alpha);
    if (ia == alpha && ia >= 3.0 && ia <= 8.0) {
        double acc = r;
        for (int k = 1; k < static_cast<int>(ia); ++k) acc *= r;
        return 1.0 / acc;
    }
    return std::pow(r, -alpha);
}

std::complex<double> next_cn(PhiloxStream& stream) {
    const double a = stream.next_normal();
    const double b = stream.next_normal();
    return {a * kInvSqrt2, b * kInvSqrt2};
}

void fill_cn(PhiloxStream& stream, int n_r, cvec& out) {
    out.resize(static_cast<std::size_t>(n_r));
    for (auto& e : out) e = next_cn(stream);
}

std::complex<double> dot_conj(const cvec& a, const cvec& b) {
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) acc += std::conj(a[k]) * b[k];
    return acc;
}

double norm2(const cvec& a) {
    double acc = 0.0;
    for (const auto& e : a) acc += std::norm(e);
    return acc;
}

// Sum of n unit exponentials: a Gamma(n, 1) draw.
double gamma_int(PhiloxStream& stream, int n) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += stream.next_exponential();
    return acc;
}

void check_combiner(const cvec& v, const std::vector<cvec>& nearest) {
    if (std::abs(std::sqrt(norm2(v)) - 1.0) > 1e-12)
        throw NumericalFailure("combiner norm drifted from 1");
    for (const auto& h : nearest)
        if (std::abs(dot_conj(v, h)) > 1e-10)
            throw NumericalFailure(
                "combiner not orthogonal to a cancelled channel");
}

struct TrialWorkspace {
    PppRealization ppp;
    cvec h0;
    std::vector<cvec> nearest;
    cvec v;
};

// Combiner for the fused path: reuses workspace vectors, otherwise identical
// to pzf_combiner.
void build_combiner(const cvec& h0, std::vector<cvec>& nearest, cvec& v) {
    v = pzf_combiner(h0, nearest);
}

struct TrialResult {
    bool success = false;
    int redraws = 0;
};

// One exact-model trial. Channel vectors for uncancelled points are consumed
// on the fly; only the cancelled ones are materialized (the combiner needs
// them). Draw order matches sample_channels: h0 first, then points in
// ascending-distance order.
TrialResult trial_exact(const NetworkParams& params, const PzfConfig& cfg,
                        double theta, const SimConfig& sim,
                        std::uint64_t trial_index, TrialWorkspace& ws,
                        bool check_properties) {
    PhiloxStream stream(sim.seed, trial_index);
    detail::sample_ppp_stream(params, sim.window_points_target, stream,
                              ws.ppp);
    TrialResult res;
    if (ws.ppp.count <= cfg.m) {
        res.success = true;  // zero residual interference
        return res;
    }

    ws.nearest.resize(static_cast<std::size_t>(cfg.m));
    for (;;) {
        fill_cn(stream, cfg.n_r, ws.h0);
        for (auto& h : ws.nearest) fill_cn(stream, cfg.n_r, h);
        try {
            build_combiner(ws.h0, ws.nearest, ws.v);
            break;
        } catch (const DegenerateProjection&) {
            if (++res.redraws > kMaxRedrawsPerTrial)
                throw NumericalFailure("persistent degenerate projections");
        }
    }
    if (check_properties) check_combiner(ws.v, ws.nearest);

    const double s0 = std::norm(dot_conj(ws.v, ws.h0));
    const int n_r = cfg.n_r;
    double interference = 0.0;
    for (std::int64_t i = cfg.m; i < ws.ppp.count; ++i) {
        double ure = 0.0, uim = 0.0;
        for (int k = 0; k < n_r; ++k) {
            const double hre = stream.next_normal() * kInvSqrt2;
            const double him = stream.next_normal() * kInvSqrt2;
            const double vre = ws.v[static_cast<std::size_t>(k)].real();
            const double vim = ws.v[static_cast<std::size_t>(k)].imag();
            ure += vre * hre + vim * him;
            uim += vre * him - vim * hre;
        }
        interference +=
            pathloss(ws.ppp.distances[static_cast<std::size_t>(i)],
                     params.alpha) *
            (ure * ure + uim * uim);
    }
    interference *= params.rho;
    res.success =
        interference == 0.0 ||
        params.rho0 * pathloss(params.r0, params.alpha) * s0 / interference >
            theta;
    return res;
}

TrialResult trial_gamma_shortcut(const NetworkParams& params,
                                 const PzfConfig& cfg, double theta,
                                 const SimConfig& sim,
                                 std::uint64_t trial_index,
                                 TrialWorkspace& ws) {
    PhiloxStream stream(sim.seed, trial_index);
    detail::sample_ppp_stream(params, sim.window_points_target, stream,
                              ws.ppp);
    TrialResult res;
    if (ws.ppp.count <= cfg.m) {
        res.success = true;
        return res;
    }
    const double s0 = gamma_int(stream, cfg.n_r - cfg.m);
    double interference = 0.0;
    for (std::int64_t i = cfg.m; i < ws.ppp.count; ++i)
        interference +=
            pathloss(ws.ppp.distances[static_cast<std::size_t>(i)],
                     params.alpha) *
            stream.next_exponential();
    interference *= params.rho;
    res.success =
        interference == 0.0 ||
        params.rho0 * pathloss(params.r0, params.alpha) * s0 / interference >
            theta;
    return res;
}

TrialResult trial_approx(const NetworkParams& params, const PzfConfig& cfg,
                         double theta, const SimConfig& sim, double d_m,
                         std::uint64_t trial_index, TrialWorkspace& ws) {
    PhiloxStream stream(sim.seed, trial_index);
    detail::sample_ppp_stream(params, sim.window_points_target, stream,
                              ws.ppp);
    const double s0 = gamma_int(stream, cfg.n_r - cfg.m);
    const auto first = std::upper_bound(ws.ppp.distances.begin(),
                                        ws.ppp.distances.end(), d_m);
    double interference = 0.0;
    for (auto it = first; it != ws.ppp.distances.end(); ++it)
        interference +=
            pathloss(*it, params.alpha) * stream.next_exponential();
    interference *= params.rho;
    TrialResult res;
    res.success =
        interference == 0.0 ||
        params.rho0 * pathloss(params.r0, params.alpha) * s0 / interference >
            theta;
    return res;
}

struct WorkerTally {
    std::int64_t successes = 0;
    std::int64_t redraws = 0;
    std::exception_ptr error;
};

}  // namespace

PppRealization sample_ppp(const NetworkParams& params, const SimConfig& cfg,
                          std::uint64_t trial_index) {
    params.validate();
    cfg.validate();
    PhiloxStream stream(cfg.seed, trial_index);
    PppRealization out;
    detail::sample_ppp_stream(params, cfg.window_points_target, stream, out);
    return out;
}

ChannelDraw sample_channels(int n_r, std::int64_t n_interferers,
                            PhiloxStream& stream) {
    if (n_r < 1) throw DomainError("n_r must be >= 1");
    if (n_interferers < 0) throw DomainError("negative interferer count");
    ChannelDraw draw;
    fill_cn(stream, n_r, draw.h0);
    draw.h_interferers.resize(static_cast<std::size_t>(n_interferers));
    for (auto& h : draw.h_interferers) fill_cn(stream, n_r, h);
    return draw;
}

std::vector<std::complex<double>> pzf_combiner(
    const cvec& h0, const std::vector<cvec>& h_nearest) {
    const std::size_t n_r = h0.size();
    if (n_r == 0) throw DomainError("empty channel vector");
    if (h_nearest.size() >= n_r)
        throw DomainError("cannot cancel n_r or more channels");

    // Modified Gram-Schmidt with a second sweep per vector; Gaussian draws
    // are almost surely well conditioned, the re-orthogonalization just
    // keeps |v^H h_i| at roundoff level.
    std::vector<cvec> basis;
    basis.reserve(h_nearest.size());
    for (const auto& h : h_nearest) {
        if (h.size() != n_r) throw DomainError("channel length mismatch");
        cvec e = h;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) {
                const auto coef = dot_conj(b, e);
                for (std::size_t k = 0; k < n_r; ++k) e[k] -= coef * b[k];
            }
        const double norm = std::sqrt(norm2(e));
        if (norm < kDegenerateTol * std::sqrt(norm2(h)))
            throw DegenerateProjection("cancelled channels nearly dependent");
        for (auto& x : e) x /= norm;
        basis.push_back(std::move(e));
    }

    cvec p = h0;
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) {
            const auto coef = dot_conj(b, p);
            for (std::size_t k = 0; k < n_r; ++k) p[k] -= coef * b[k];
        }
    const double h0_norm = std::sqrt(norm2(h0));
    const double p_norm = std::sqrt(norm2(p));
    if (p_norm < kDegenerateTol * h0_norm || !(p_norm > 0.0))
        throw DegenerateProjection("desired channel lies in cancelled span");
    for (auto& x : p) x /= p_norm;
    return p;
}

double sir_exact(const NetworkParams& params, const PzfConfig& cfg,
                 const PppRealization& ppp, const ChannelDraw& ch) {
    params.validate();
    cfg.validate();
    if (ch.h0.size() != static_cast<std::size_t>(cfg.n_r))
        throw DomainError("h0 length must equal n_r");
    if (ch.h_interferers.size() != static_cast<std::size_t>(ppp.count))
        throw DomainError("one channel vector per field point required");
    if (ppp.count <= cfg.m)
        return std::numeric_limits<double>::infinity();

    const std::vector<cvec> nearest(
        ch.h_interferers.begin(), ch.h_interferers.begin() + cfg.m);
    const cvec v = pzf_combiner(ch.h0, nearest);
    const double s0 = std::norm(dot_conj(v, ch.h0));
    double interference = 0.0;
    for (std::int64_t i = cfg.m; i < ppp.count; ++i)
        interference +=
            pathloss(ppp.distances[static_cast<std::size_t>(i)],
                     params.alpha) *
            std::norm(dot_conj(v, ch.h_interferers[static_cast<std::size_t>(i)]));
    interference *= params.rho;
    if (interference == 0.0) return std::numeric_limits<double>::infinity();
    return params.rho0 * pathloss(params.r0, params.alpha) * s0 /
           interference;
}

double sir_approx(const NetworkParams& params, const PzfConfig& cfg,
                  const PppRealization& ppp, PhiloxStream& stream) {
    params.validate();
    cfg.validate();
    if (cfg.m < 1)
        throw DomainError("distance-threshold model requires m >= 1");
    const double d_m = mean_mth_distance(params, cfg.m);
    const double s0 = gamma_int(stream, cfg.n_r - cfg.m);
    const auto first =
        std::upper_bound(ppp.distances.begin(), ppp.distances.end(), d_m);
    double interference = 0.0;
    for (auto it = first; it != ppp.distances.end(); ++it)
        interference +=
            pathloss(*it, params.alpha) * stream.next_exponential();
    interference *= params.rho;
    if (interference == 0.0) return std::numeric_limits<double>::infinity();
    return params.rho0 * pathloss(params.r0, params.alpha) * s0 /
           interference;
}

SuccessEstimate estimate_success(const NetworkParams& params,
                                 const PzfConfig& cfg, double theta,
                                 const SimConfig& sim) {
    params.validate();
    cfg.validate();
    sim.validate();
    if (!(theta > 0.0)) throw DomainError("theta must be > 0");
    if (sim.model == SimModel::approx_dm && cfg.m < 1)
        throw DomainError("distance-threshold model requires m >= 1");
    const double d_m = sim.model == SimModel::approx_dm
                           ? mean_mth_distance(params, cfg.m)
                           : 0.0;

    const auto run_range = [&](std::int64_t lo, std::int64_t hi,
                               WorkerTally& tally) {
        try {
            TrialWorkspace ws;
            for (std::int64_t t = lo; t < hi; ++t) {
                TrialResult r;
                switch (sim.model) {
                    case SimModel::exact: {
#ifdef NDEBUG
                        const bool check = t % 100 == 0;
#else
                        const bool check = true;
#endif
                        r = trial_exact(params, cfg, theta, sim,
                                        static_cast<std::uint64_t>(t), ws,
                                        check);
                        break;
                    }
                    case SimModel::gamma_shortcut:
                        r = trial_gamma_shortcut(
                            params, cfg, theta, sim,
                            static_cast<std::uint64_t>(t), ws);
                        break;
                    case SimModel::approx_dm:
                        r = trial_approx(params, cfg, theta, sim, d_m,
                                         static_cast<std::uint64_t>(t), ws);
                        break;
                }
                tally.successes += r.success ? 1 : 0;
                tally.redraws += r.redraws;
            }
        } catch (...) {
            tally.error = std::current_exception();
        }
    };

    const int workers = static_cast<int>(std::max<std::int64_t>(
        1, std::min<std::int64_t>(detail::worker_count(), sim.trials)));
    std::vector<WorkerTally> tallies(static_cast<std::size_t>(workers));
    if (workers == 1) {
        run_range(0, sim.trials, tallies[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        const std::int64_t base = sim.trials / workers;
        const std::int64_t rem = sim.trials % workers;
        std::int64_t lo = 0;
        for (int w = 0; w < workers; ++w) {
            const std::int64_t hi = lo + base + (w < rem ? 1 : 0);
            pool.emplace_back(run_range, lo, hi,
                              std::ref(tallies[static_cast<std::size_t>(w)]));
            lo = hi;
        }
        for (auto& th : pool) th.join();
    }

    std::int64_t successes = 0, redraws = 0;
    for (const auto& tally : tallies) {
        if (tally.error) std::rethrow_exception(tally.error);
        successes += tally.successes;
        redraws += tally.redraws;
    }
    if (static_cast<double>(redraws) > 1e-3 * static_cast<double>(sim.trials))
        throw NumericalFailure("degenerate projections exceeded 0.1%");

    SuccessEstimate est;
    est.p_hat = static_cast<double>(successes) /
                static_cast<double>(sim.trials);
    est.half_width =
        stats::ci_half_width(est.p_hat, sim.trials, sim.confidence_level);
    est.trials = sim.trials;
    est.seed = sim.seed;
    est.model_tag = sim.model;
    est.degenerate_redraws = redraws;
    return est;
}

double empirical_mth_distance(const NetworkParams& params, int m,
                              const SimConfig& sim) {
    params.validate();
    sim.validate();
    if (m < 1) throw DomainError("m must be >= 1");

    // The window must hold at least m points essentially always; otherwise
    // X_m does not exist in the draw.
    double target = sim.window_points_target;
    if (stats::poisson_cdf(target, m - 1) > 1e-6) {
        target *= 2.0;
        if (stats::poisson_cdf(target, m - 1) > 1e-6)
            throw NumericalFailure(
                "window too small for the requested order statistic");
    }

    PppRealization ppp;
    double acc = 0.0;
    for (std::int64_t t = 0; t < sim.trials; ++t) {
        PhiloxStream stream(sim.seed, static_cast<std::uint64_t>(t));
        detail::sample_ppp_stream(params, target, stream, ppp);
        if (ppp.count < m)
            throw NumericalFailure("field draw held fewer than m points");
        acc += ppp.distances[static_cast<std::size_t>(m - 1)];
    }
    return acc / static_cast<double>(sim.trials);
}

void collect_combiner_gains(const PzfConfig& cfg, const SimConfig& sim,
                            std::vector<double>* s0, std::vector<double>* si) {
    cfg.validate();
    sim.validate();
    if (s0) {
        s0->clear();
        s0->reserve(static_cast<std::size_t>(sim.trials));
    }
    if (si) {
        si->clear();
        si->reserve(static_cast<std::size_t>(sim.trials));
    }
    TrialWorkspace ws;
    ws.nearest.resize(static_cast<std::size_t>(cfg.m));
    cvec extra;
    for (std::int64_t t = 0; t < sim.trials; ++t) {
        PhiloxStream stream(sim.seed, static_cast<std::uint64_t>(t));
        int redraws = 0;
        for (;;) {
            fill_cn(stream, cfg.n_r, ws.h0);
            for (auto& h : ws.nearest) fill_cn(stream, cfg.n_r, h);
            try {
                build_combiner(ws.h0, ws.nearest, ws.v);
                break;
            } catch (const DegenerateProjection&) {
                if (++redraws > kMaxRedrawsPerTrial)
                    throw NumericalFailure(
                        "persistent degenerate projections");
            }
        }
        if (s0) s0->push_back(std::norm(dot_conj(ws.v, ws.h0)));
        if (si) {
            fill_cn(stream, cfg.n_r, extra);
            si->push_back(std::norm(dot_conj(ws.v, extra)));
        }
    }
}

namespace detail {

void sample_ppp_stream(const NetworkParams& params,
                       double window_points_target, PhiloxStream& stream,
                       PppRealization& out) {
    const double r_max =
        std::sqrt(window_points_target / (std::numbers::pi * params.lambda));
    std::poisson_distribution<std::int64_t> count_law(window_points_target);
    const std::int64_t n = count_law(stream);
    out.distances.clear();
    out.distances.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        out.distances.push_back(r_max * std::sqrt(stream.next_double()));
    std::sort(out.distances.begin(), out.distances.end());
    out.window_radius = r_max;
    out.count = n;
}

int worker_count() {
    if (const char* env = std::getenv("PZF_UDN_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && parsed >= 1 && parsed <= 4096)
            return static_cast<int>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace detail

}  // namespace pzf_udn
