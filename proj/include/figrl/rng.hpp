#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace figrl::rng {

namespace detail {

inline void philox_round(std::uint32_t& c0, std::uint32_t& c1, std::uint32_t& c2,
                         std::uint32_t& c3, std::uint32_t k0, std::uint32_t k1) {
    const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * c0;
    const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * c2;
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    c0 = hi1 ^ c1 ^ k0;
    c1 = lo1;
    c2 = hi0 ^ c3 ^ k1;
    c3 = lo0;
}

} // namespace detail

// Philox 4x32, 10 rounds. Counter-based: the output block is a pure function
// of (key, counter), so any position in any stream can be regenerated without
// sequential state.
inline void philox10(const std::uint32_t ctr[4], std::uint32_t k0, std::uint32_t k1,
                     std::uint32_t out[4]) {
    std::uint32_t c0 = ctr[0], c1 = ctr[1], c2 = ctr[2], c3 = ctr[3];
    for (int r = 0; r < 10; ++r) {
        detail::philox_round(c0, c1, c2, c3, k0, k1);
        k0 += 0x9E3779B9u;
        k1 += 0xBB67AE85u;
    }
    out[0] = c0;
    out[1] = c1;
    out[2] = c2;
    out[3] = c3;
}

// 53-bit mantissa mappings.
inline double unit_from(std::uint64_t x) { // [0, 1)
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

inline double unit_pos_from(std::uint64_t x) { // (0, 1]
    return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

// Fills `out` with standard normals via Box-Muller on philox blocks.
// `stream` selects an independent substream (e.g. one projection column);
// element i of a stream depends only on (seed, stream, i), so regeneration
// is bit-identical and order-free.
inline void gaussian_fill(std::uint64_t seed, std::uint64_t stream, double* out,
                          std::size_t count) {
    const std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    const std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
    const std::uint32_t s0 = static_cast<std::uint32_t>(stream);
    const std::uint32_t s1 = static_cast<std::uint32_t>(stream >> 32);
    constexpr double two_pi = 6.283185307179586476925286766559;
    const std::size_t blocks = (count + 1) / 2;
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::uint32_t ctr[4] = {s0, s1, static_cast<std::uint32_t>(b),
                                      static_cast<std::uint32_t>(std::uint64_t{b} >> 32)};
        std::uint32_t r[4];
        philox10(ctr, k0, k1, r);
        const std::uint64_t x = (std::uint64_t{r[0]} << 32) | r[1];
        const std::uint64_t y = (std::uint64_t{r[2]} << 32) | r[3];
        const double u1 = unit_pos_from(x); // strictly positive: log is finite
        const double u2 = unit_from(y);
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = two_pi * u2;
        out[2 * b] = rad * std::cos(ang);
        if (2 * b + 1 < count) out[2 * b + 1] = rad * std::sin(ang);
    }
}

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Key derivation for independent substreams (per-trial seeds, per-edge coins).
inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    return mix64(a + 0x9E3779B97F4A7C15ull * (b + 0x632BE59BD9B4E019ull));
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix(mix(a, b), c);
}

// Small sequential generator for sampling decisions (seeding, shuffles).
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        return mix64(state);
    }

    double unit() { return unit_from(next()); } // [0, 1)

    // Unbiased enough for n far below 2^64 (Lemire multiply-shift).
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }
};

} // namespace figrl::rng
