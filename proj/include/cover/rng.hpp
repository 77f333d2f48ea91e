#pragma once

#include <cstdint>
#include <random>

namespace cover {

using Rng = std::mt19937_64;

/// splitmix64 finaliser; a bijective 64-bit mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/*!
 * Independent stream for trial `index` of experiment `stream`.
 *
 * Streams are a pure function of their coordinates, so trials can be run in
 * any order (or concurrently) and still reproduce bit for bit.
 */
inline Rng make_stream(std::uint64_t base_seed, std::uint64_t stream,
                       std::uint64_t index)
{
    const std::uint64_t key
        = splitmix64(splitmix64(splitmix64(base_seed) ^ stream) + index);
    return Rng(key);
}

}  // namespace cover
