#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "dnamem/seq.hpp"

namespace dnamem {

// Deterministic RNG for everything randomized in the library. mt19937_64 output
// is pinned by the standard; the distributions here are written out by hand so
// the same seed yields the same bytes on every platform and stdlib.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, bound), bound > 0. Rejection keeps it unbiased.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % bound;
    }

    double unit() {  // [0, 1), 53-bit resolution
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double gaussian(double mean, double sigma) {
        if (has_spare_) {
            has_spare_ = false;
            return mean + sigma * spare_;
        }
        double u1, u2;
        do {
            u1 = unit();
        } while (u1 <= 0.0);
        u2 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return mean + sigma * r * std::cos(theta);
    }

    Base base() { return static_cast<Base>(below(4)); }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace dnamem
