#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tbqkd::rng {

/// One round of the splitmix64 output function. Used both as a stream cipher
/// for seed derivation and as the mixer behind substream splitting.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives a well-separated 64-bit seed from a master seed and up to three
/// stream labels. Substreams with distinct labels are independent for all
/// practical purposes, so trials/shards can be generated in any order (or in
/// parallel) with results identical to sequential generation.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = master;
    std::uint64_t z = splitmix64(s);
    s ^= a + 0x632be59bd9b4e019ULL;
    z ^= splitmix64(s);
    s ^= b + 0xd6e8feb86659fd93ULL;
    z ^= splitmix64(s);
    s ^= c + 0xa0761d6478bd642fULL;
    z ^= splitmix64(s);
    return z;
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t master, std::uint64_t a = 0,
                          std::uint64_t b = 0, std::uint64_t c = 0) {
    return Engine(derive_seed(master, a, b, c));
}

/// Uniform double in the half-open interval [0, 1). Hand-rolled from raw
/// engine output so results do not depend on the standard library's
/// distribution implementations.
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1]; safe to pass to log().
inline double uniform01_pos(Engine& eng) {
    return (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;
}

/// Exponential inter-arrival gap for a Poisson process of the given rate.
inline double exp_gap(Engine& eng, double rate_hz) {
    return -std::log(uniform01_pos(eng)) / rate_hz;
}

/// Standard normal via Box-Muller (first branch only, stateless per call).
inline double gaussian(Engine& eng) {
    const double u = uniform01_pos(eng);
    const double v = uniform01(eng);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925286766559 * v);
}

/// Normal draw truncated at +/- cap_sigmas standard deviations. The shard
/// merge logic in the tag-stream generator needs a hard bound on how far a
/// timestamp can move, so detector jitter uses this instead of a plain normal.
inline double gaussian_truncated(Engine& eng, double sigma, double cap_sigmas = 8.0) {
    if (sigma <= 0.0) return 0.0;
    double g = gaussian(eng);
    while (std::abs(g) > cap_sigmas) g = gaussian(eng);
    return g * sigma;
}

}  // namespace tbqkd::rng
