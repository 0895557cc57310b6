#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>
#include <string_view>

namespace cachelab {

// Small self-contained generator (splitmix64 core) so that runs are
// reproducible across platforms and standard-library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, n), n >= 1.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = -n % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform in (0, 1]; never returns 0 so it is safe under log().
    double uniform01() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; second value cached.
    double normal01() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        spare_ = mag * std::sin(ang);
        have_spare_ = true;
        return mag * std::cos(ang);
    }

    // exp(sigma * N(0,1)); equals exactly 1 when sigma == 0.
    double lognormal(double sigma) {
        const double z = normal01();
        return sigma == 0.0 ? 1.0 : std::exp(sigma * z);
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Counter-based seed derivation: child streams are a pure function of
// (master, tag, counter), so adding new consumers does not shift the
// randomness of existing ones.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t counter = 0) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    Rng mix(master ^ h ^ (counter * 0x9e3779b97f4a7c15ULL));
    mix.next();
    return mix.next();
}

} // namespace cachelab
