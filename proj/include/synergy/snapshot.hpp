#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "synergy/field.hpp"

namespace synergy {

/// SNS1 binary snapshot:
///   "SNS1" | u32 n | f64 time | f64 nu | u8 flags (bit0 solenoidal, bit1 mean-free)
///   | 3 n^3 complex coefficients as (re, im) f64 pairs.
/// All values little-endian. Coefficients are written per wavenumber in
/// storage order, the three components of each wavenumber adjacent.
struct Snapshot {
  SpectralField field;
  double nu = 0.0;
};

void write_snapshot(std::ostream& out, const SpectralField& field, double nu);
void write_snapshot(const std::filesystem::path& path, const SpectralField& field, double nu);

/// Throws IoError on a short read, bad magic or invalid header.
Snapshot read_snapshot(std::istream& in, double dealias_fraction = GridSpec::default_dealias);
Snapshot read_snapshot(const std::filesystem::path& path,
                       double dealias_fraction = GridSpec::default_dealias);

}  // namespace synergy
