#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace jobmatch {

/// Seeded RNG with self-contained variate transforms. std::mt19937_64 output
/// is fully specified by the standard; the distribution adaptors in <random>
/// are not, so the transforms live here and generated artifacts stay
/// bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        // Lemire's multiply-shift with rejection of the biased residue.
        std::uint64_t x = engine_();
        unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                x = engine_();
                m = static_cast<unsigned __int128>(x) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    int index(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

    bool coin() { return (engine_() & 1u) != 0; }

    /// Standard normal via Box-Muller; burns two uniforms per call.
    double gaussian() {
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// k distinct values from [0, population), in random order.
    std::vector<int> sample_without_replacement(int population, int k) {
        std::vector<int> pool(population);
        for (int i = 0; i < population; ++i) pool[i] = i;
        for (int i = 0; i < k; ++i) {
            int j = i + index(population - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        return pool;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace jobmatch
