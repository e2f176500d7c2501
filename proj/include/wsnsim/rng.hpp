#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace wsnsim {

// 64-bit generator used by every Monte Carlo worker: xoshiro256++ state,
// seeded through the splitmix64 finalizer so that (seed, stream) pairs give
// statistically independent substreams. Construction is a pure function of
// the two integers, which is what makes chunked runs reproducible for any
// worker count.
class SplitRng {
public:
    SplitRng() : SplitRng(0, 0) {}

    SplitRng(std::uint64_t seed, std::uint64_t stream)
    {
        std::uint64_t s = mix64(seed + 0x9E3779B97F4A7C15ull)
                        ^ mix64(stream + 0x3C6EF372FE94F82Aull);
        for (auto& word : state_) {
            s += 0x9E3779B97F4A7C15ull;
            word = mix64(s);
        }
        // xoshiro must not start from the all-zero state
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0)
            state_[0] = 0x1ull;
    }

    std::uint64_t next()
    {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1]; safe as a log() argument.
    double uniform_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Multiply-high mapping; the residual bias is
    /// below 2^-64 per outcome, far under anything a tally can resolve.
    std::uint64_t uniform_below(std::uint64_t n)
    {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    /// Circularly symmetric complex Gaussian with E[|z|^2] = power.
    /// Consumes exactly two 64-bit draws (Box-Muller in polar form).
    std::complex<double> complex_gaussian(double power)
    {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-power * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k)
    {
        return (x << k) | (x >> (64 - k));
    }

    // splitmix64 output function (Vigna); bijective on 64-bit words
    static std::uint64_t mix64(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
};

/// Child seed for sweep point `index` under a master seed. Deterministic,
/// order-free: the sweep can evaluate points in any order and each still
/// sees the same substream family.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace wsnsim
