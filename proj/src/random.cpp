#include "spde/random.hpp"

#include <cmath>
#include <numbers>

namespace spde {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t kMulA = 0xD2511F53u;
  constexpr std::uint32_t kMulB = 0xCD9E8D57u;
  constexpr std::uint32_t kWeylA = 0x9E3779B9u;
  constexpr std::uint32_t kWeylB = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t prod_a = static_cast<std::uint64_t>(kMulA) * ctr[0];
    const std::uint64_t prod_b = static_cast<std::uint64_t>(kMulB) * ctr[2];
    const auto hi_a = static_cast<std::uint32_t>(prod_a >> 32);
    const auto lo_a = static_cast<std::uint32_t>(prod_a);
    const auto hi_b = static_cast<std::uint32_t>(prod_b >> 32);
    const auto lo_b = static_cast<std::uint32_t>(prod_b);
    ctr = {hi_b ^ ctr[1] ^ key[0], lo_b, hi_a ^ ctr[3] ^ key[1], lo_a};
    key[0] += kWeylA;
    key[1] += kWeylB;
  }
  return ctr;
}

namespace {

// Uniform in (0, 1]: never zero, so log() below is finite.
double open_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

}  // namespace

std::pair<double, double> gaussian_pair(std::uint64_t seed, int k1, int k2, std::uint64_t step) {
  const std::array<std::uint32_t, 4> counter{
      static_cast<std::uint32_t>(k1), static_cast<std::uint32_t>(k2),
      static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(step >> 32)};
  const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed),
                                         static_cast<std::uint32_t>(seed >> 32)};
  const auto block = philox4x32(counter, key);
  const double u1 = open_unit(block[0], block[1]);
  const double u2 = open_unit(block[2], block[3]);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace spde
