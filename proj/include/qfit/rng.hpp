#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qfit/types.hpp"

namespace qfit {

// Deterministic random helpers. Distribution shapes are hand-rolled on top
// of mt19937_64 because the standard distributions are free to differ
// between library implementations, and reports promise bytewise
// reproducibility for a fixed seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Vec3 unit_vector() {
        while (true) {
            const Vec3 v(gauss(), gauss(), gauss());
            const double n = v.norm();
            if (n > 1e-12) return v / n;
        }
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Stable per-task seed derivation (splitmix64 step).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t task) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (task + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace qfit
