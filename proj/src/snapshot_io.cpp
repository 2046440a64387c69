#include "spde/snapshot_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace spde {

namespace {

constexpr std::array<char, 5> kMagic{'S', 'P', 'D', 'E', '1'};

template <typename U>
void put_le(std::ostream &out, U value) {
  std::array<char, sizeof(U)> bytes{};
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFFu);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename U>
U get_le(std::istream &in) {
  std::array<unsigned char, sizeof(U)> bytes{};
  in.read(reinterpret_cast<char *>(bytes.data()), bytes.size());
  if (!in) throw std::runtime_error("snapshot: truncated record");
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    value |= static_cast<U>(bytes[i]) << (8 * i);
  }
  return value;
}

}  // namespace

void write_snapshot(std::ostream &out, const SpectralField &f) {
  const auto &lat = f.lattice();
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(lat.cutoff()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(lat.grid_size()));
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(lat.size()));
  for (const auto &c : f.coeffs()) {
    put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(c.real()));
    put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(c.imag()));
  }
  if (!out) throw std::runtime_error("snapshot: write failed");
}

SpectralField read_snapshot(std::istream &in) {
  std::array<char, 5> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error("snapshot: bad magic");
  const auto cutoff = get_le<std::uint32_t>(in);
  const auto grid = get_le<std::uint32_t>(in);
  const auto count = get_le<std::uint64_t>(in);
  auto lattice = ModeLattice::with_grid(static_cast<int>(cutoff), static_cast<int>(grid));
  if (count != lattice->size()) {
    throw std::runtime_error("snapshot: mode count does not match N");
  }
  std::vector<Complex> coeffs(count);
  for (auto &c : coeffs) {
    const double re = std::bit_cast<double>(get_le<std::uint64_t>(in));
    const double im = std::bit_cast<double>(get_le<std::uint64_t>(in));
    c = {re, im};
  }
  return SpectralField(std::move(lattice), std::move(coeffs));
}

void write_snapshot_file(const std::filesystem::path &path, const SpectralField &f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("snapshot: cannot open " + path.string());
  write_snapshot(out, f);
}

SpectralField read_snapshot_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("snapshot: cannot open " + path.string());
  return read_snapshot(in);
}

std::vector<SpectralField> read_snapshot_sequence(std::istream &in) {
  std::vector<SpectralField> out;
  while (in.peek() != std::char_traits<char>::eof()) {
    out.push_back(read_snapshot(in));
  }
  return out;
}

}  // namespace spde
