// Counter-based random numbers.
//
// Every Gaussian innovation is a pure function of (stream key, mode, step):
// no generator state is carried between draws, so adding modes or samples
// never shifts existing values, and draws can be produced in any order.
//
// The block cipher is Philox4x32-10 (Salmon et al., SC'11). Stream keys are
// derived from a master seed with the SplitMix64 finalizer.
#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace spde {

/// SplitMix64 output function applied to one 64-bit word.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of sample `index` under `master`: splitmix64(master ^ splitmix64(index)).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Ten-round Philox 4x32 bijection of `counter` under `key`.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Two independent N(0,1) draws addressed by (seed, k1, k2, step).
/// Box-Muller on two 53-bit uniforms taken from one Philox block.
std::pair<double, double> gaussian_pair(std::uint64_t seed, int k1, int k2, std::uint64_t step);

}  // namespace spde
