// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator
// Seeded random draws with explicit transforms so that every stream is
// reproducible bit-for-bit across platforms and thread schedules.

#ifndef SRA_RNG_HPP
#define SRA_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace sra {

// splitmix64 finalizer; used to derive substream seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Substream for stream index `k` of a base seed. Streams are independent of
// how many other streams exist, so adding users/realizations never perturbs
// earlier draws.
inline std::uint64_t substream_seed(std::uint64_t base, std::uint64_t k) {
    return mix_seed(base ^ (0x9E3779B97F4A7C15ULL * (k + 1)));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1), 53-bit resolution; transform is fixed by this code
    // rather than by the standard library's unspecified distributions.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal pair via Box-Muller (no rejection, fixed draw count).
    void normal_pair(double& z0, double& z1) {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        z0 = r * std::cos(t);
        z1 = r * std::sin(t);
    }

    // Circularly-symmetric complex Gaussian, E[|x|^2] = 1.
    std::complex<double> standard_complex_gaussian() {
        double re, im;
        normal_pair(re, im);
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace sra

#endif  // SRA_RNG_HPP
