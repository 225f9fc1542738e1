#pragma once

#include <cstdint>
#include <random>

namespace potkit {

// Engine used everywhere a seed is accepted. mt19937_64 output is fixed by the
// standard, and uniform() below avoids the implementation-defined
// std::uniform_real_distribution, so draws are reproducible across toolchains.
using Engine = std::mt19937_64;

// Uniform deviate on [0, 1) with 53 bits of resolution.
inline double uniform(Engine& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// splitmix64 finalizer, used to derive independent child seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) {
  return mix_seed(parent ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

}  // namespace potkit
