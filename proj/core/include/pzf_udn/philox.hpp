#pragma once

// Philox4x32-10 counter-based generator. Each Monte Carlo trial owns the
// substream keyed by (seed, trial_index), so draws depend only on that pair
// and never on worker count or execution order.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>

namespace pzf_udn {

struct Philox4x32 {
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
            const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
            const auto hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
            const auto hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }
};

// One trial's substream. Satisfies UniformRandomBitGenerator (64-bit) so
// std:: distributions can consume it directly.
class PhiloxStream {
public:
    using result_type = std::uint64_t;

    PhiloxStream(std::uint64_t seed, std::uint64_t trial_index)
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
          trial_lo_(std::uint32_t(trial_index)),
          trial_hi_(std::uint32_t(trial_index >> 32)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() { return next_u64(); }

    std::uint64_t next_u64() {
        if (have_buffered_) {
            have_buffered_ = false;
            return buffered_;
        }
        const auto out = Philox4x32::block(
            {std::uint32_t(block_), std::uint32_t(block_ >> 32), trial_lo_, trial_hi_},
            key_);
        ++block_;
        buffered_ = (std::uint64_t(out[3]) << 32) | out[2];
        have_buffered_ = true;
        return (std::uint64_t(out[1]) << 32) | out[0];
    }

    // Uniform on [0, 1), 53-bit resolution.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal pair via Box-Muller; u1 shifted into (0, 1].
    std::pair<double, double> next_normal_pair() {
        const double u1 = 1.0 - next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    double next_normal() {
        if (have_normal_) {
            have_normal_ = false;
            return spare_normal_;
        }
        auto [a, b] = next_normal_pair();
        spare_normal_ = b;
        have_normal_ = true;
        return a;
    }

    // Unit-mean exponential.
    double next_exponential() { return -std::log1p(-next_double()); }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t trial_lo_, trial_hi_;
    std::uint64_t block_ = 0;
    std::uint64_t buffered_ = 0;
    bool have_buffered_ = false;
    double spare_normal_ = 0.0;
    bool have_normal_ = false;
};

}  // namespace pzf_udn
