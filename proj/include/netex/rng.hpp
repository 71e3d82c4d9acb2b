#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace netex {

// Deterministic RNG wrapper. All stochastic code in the library draws through
// this class so that a (seed, counter) pair fully determines the stream,
// independent of how work is scheduled across threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    int uniform_int(int n) {
        return static_cast<int>(uniform01() * static_cast<double>(n));
    }

    // Uniform double in [-h, h].
    double uniform_symmetric(double h) { return (2.0 * uniform01() - 1.0) * h; }

    // Inverse-CDF draw from a small discrete distribution.
    int discrete(std::span<const double> probabilities) {
        double r = uniform01();
        double acc = 0.0;
        int last = 0;
        for (std::size_t i = 0; i < probabilities.size(); ++i) {
            acc += probabilities[i];
            last = static_cast<int>(i);
            if (r < acc) return last;
        }
        return last;
    }

    // Counter-based stream derivation (splitmix64 finalizer). Used to give
    // every trial/repetition its own seed as a pure function of the master
    // seed and the trial index.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t counter) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace netex
