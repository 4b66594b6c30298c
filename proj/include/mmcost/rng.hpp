#pragma once

// Seeded random streams. Distributions are written out here rather than
// taken from <random> so that sequences are identical across standard
// library implementations; only the engine comes from the standard.

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace mmcost {

using Rng = std::mt19937_64;

/// Independent stream derived from a master seed, a stream name and an index.
inline Rng make_stream(std::uint64_t master_seed, std::string_view name, std::uint64_t index = 0) {
    std::uint64_t h = 1469598103934665603ull; // FNV-1a
    for (unsigned char ch : name) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) {
    const double v = lo + (hi - lo) * uniform01(rng);
    return v < hi ? v : lo; // guard the rounding edge so the interval stays half-open
}

/// Uniform integer in [0, bound) by rejection, bound > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do v = rng();
    while (v >= limit);
    return v % bound;
}

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

} // namespace mmcost
