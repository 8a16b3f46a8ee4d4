#pragma once

#include <cstdint>
#include <cmath>
#include <vector>

namespace rach {

// Deterministic, platform-independent RNG stack. Every simulation draws
// through these primitives so that a (seed, config) pair pins the full
// trajectory byte-for-byte; std:: distributions are avoided on purpose
// (their sequences differ between standard libraries).

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    // Independent stream for a numbered trial under one base seed.
    static Rng stream(std::uint64_t base_seed, std::uint64_t stream_id) {
        std::uint64_t sm = base_seed;
        std::uint64_t a = splitmix64(sm);
        sm ^= 0x6a09e667f3bcc909ULL * (stream_id + 1);
        return Rng(a ^ splitmix64(sm));
    }

    std::uint64_t next() {
        auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    double next_double() {  // uniform in [0,1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Unbiased integer in [0, n).
    std::uint32_t bounded(std::uint32_t n) {
        std::uint64_t x = next() >> 32;
        std::uint64_t m = x * n;
        auto lo = static_cast<std::uint32_t>(m);
        if (lo < n) {
            std::uint32_t t = (-n) % n;
            while (lo < t) {
                x = next() >> 32;
                m = x * n;
                lo = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

    bool bernoulli(double p) { return next_double() < p; }

private:
    std::uint64_t s_[4];
};

// Exact binomial sample via a CDF walk outward from the mode.
// Cost is O(sqrt(n p q)); exact up to double rounding of the pmf.
long binomial(Rng& rng, long n, double p);

// R distinct slots from {0..T-1}, ascending.
void sample_distinct_sorted(Rng& rng, int T, int R, std::vector<int>& out);

}  // namespace rach
