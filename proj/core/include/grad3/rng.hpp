#ifndef GRAD3_RNG_HPP
#define GRAD3_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "grad3/params.hpp"

namespace grad3 {

/**
 * Deterministic random source for reproducible fixtures.
 *
 * mt19937_64 with explicit output mappings: the standard distribution
 * adaptors are implementation-defined, so uniforms are produced as
 * (x >> 11) * 2^-53 and normals by Box-Muller (two uniform draws per
 * normal, cosine branch only). Identical seeds give identical sequences
 * on every platform.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    /** Uniform double in [0, 1). */
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /** Standard normal draw; consumes exactly two uniforms. */
    double normal() {
        double u1;
        do {
            u1 = uniform();
        } while (u1 == 0.0);
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /** Complex with independent standard-normal parts. */
    Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace grad3

#endif
