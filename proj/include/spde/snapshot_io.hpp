// Binary field snapshots.
//
// Layout (all little-endian):
//   "SPDE1"          5 bytes
//   N                u32
//   M                u32
//   mode count       u64
//   (re, im)         2 x f64 per mode, lexicographic mode order
#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "spde/torus_spectral.hpp"

namespace spde {

void write_snapshot(std::ostream &out, const SpectralField &f);
/// Reads one record. Throws std::runtime_error on bad magic, truncated data
/// or a mode count inconsistent with N.
SpectralField read_snapshot(std::istream &in);

void write_snapshot_file(const std::filesystem::path &path, const SpectralField &f);
SpectralField read_snapshot_file(const std::filesystem::path &path);

/// Several records back to back, as used by the noise path cache.
std::vector<SpectralField> read_snapshot_sequence(std::istream &in);

}  // namespace spde
