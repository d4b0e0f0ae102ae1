#pragma once

#include <cstdint>
#include <random>

namespace siasp {

// The standard distributions are implementation-defined, so every draw that
// feeds a reproducible artifact goes through these helpers on top of
// std::mt19937_64, whose output sequence is fixed by the standard.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// Independent stream for (seed, index); nearby seeds give unrelated streams.
Rng derive_stream(std::uint64_t seed, std::uint64_t index);

// Uniform integer in [0, bound), bound >= 1. Rejection sampling, no modulo bias.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

// Uniform double in [0, 1) built from the top 53 bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace siasp
