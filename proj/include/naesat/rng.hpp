#pragma once

// Seedable, splittable RNG: xoshiro256++ cores seeded by SplitMix64.
// Child streams derive from (seed, stream id) so per-instance work is
// reproducible independent of scheduling.

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace naesat {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64_next(sm);
    }

    // Stream `id` of this generator's seed; independent of calls made on the parent.
    Rng child(std::uint64_t id) const {
        std::uint64_t sm = seed_ + 0x9E3779B97F4A7C15ull;
        std::uint64_t mixed = splitmix64_next(sm) ^ (id + 0x2545F4914F6CDD1Dull);
        return Rng(mixed * 0xD1342543DE82EF95ull + id);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    // Uniform integer in [0, bound); rejection keeps it unbiased.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Poisson: CDF inversion for small means, Hormann's PTRS transformed
    // rejection above (inversion underflows once exp(-mean) does).
    std::uint64_t poisson(double mean) {
        if (mean < 0 || !std::isfinite(mean))
            throw std::invalid_argument("Rng::poisson: mean must be finite and non-negative");
        if (mean == 0) return 0;
        if (mean <= 30.0) return poisson_inversion(mean);
        return poisson_ptrs(mean);
    }

    std::uint64_t seed() const { return seed_; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t poisson_inversion(double mean) {
        double p = std::exp(-mean);
        double cdf = p;
        const double u = uniform01();
        std::uint64_t k = 0;
        const std::uint64_t cap = static_cast<std::uint64_t>(mean + 60.0 * std::sqrt(mean) + 60.0);
        while (u > cdf && k < cap) {
            ++k;
            p *= mean / static_cast<double>(k);
            cdf += p;
        }
        return k;
    }

    std::uint64_t poisson_ptrs(double mean) {
        const double b = 0.931 + 2.53 * std::sqrt(mean);
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double v_r = 0.9277 - 3.6224 / (b - 2.0);
        const double log_mean = std::log(mean);
        for (;;) {
            const double u = uniform01() - 0.5;
            const double v = uniform01();
            const double us = 0.5 - std::fabs(u);
            const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
            if (kf < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
                kf * log_mean - mean - std::lgamma(kf + 1.0))
                return static_cast<std::uint64_t>(kf);
        }
    }

    std::uint64_t seed_;
    std::uint64_t s_[4];
};

}  // namespace naesat
