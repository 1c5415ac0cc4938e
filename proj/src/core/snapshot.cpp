#include "synergy/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "synergy/error.hpp"

namespace synergy {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename T>
void put(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(bytes.data(), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  std::array<char, sizeof(T)> bytes;
  if (!in.read(bytes.data(), sizeof(T))) throw Error(ErrorCode::IoError, "truncated SNS1 stream");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_snapshot(std::ostream& out, const SpectralField& field, double nu) {
  out.write("SNS1", 4);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(field.grid().n()));
  put<double>(out, field.time());
  put<double>(out, nu);
  const std::uint8_t flags = (field.solenoidal() ? 1u : 0u) | (field.mean_free() ? 2u : 0u);
  put<std::uint8_t>(out, flags);
  for (std::size_t i = 0; i < field.size(); ++i) {
    for (int c = 0; c < 3; ++c) {
      const Complex v = field.component(c)[i];
      put<double>(out, v.real());
      put<double>(out, v.imag());
    }
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing SNS1 stream");
}

void write_snapshot(const std::filesystem::path& path, const SpectralField& field, double nu) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  write_snapshot(out, field, nu);
}

Snapshot read_snapshot(std::istream& in, double dealias_fraction) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "SNS1", 4) != 0) {
    throw Error(ErrorCode::IoError, "missing SNS1 magic");
  }
  const auto n = get<std::uint32_t>(in);
  if (n < 4 || n % 2 != 0 || n > 4096) throw Error(ErrorCode::IoError, "invalid grid size in SNS1 header");
  const double time = get<double>(in);
  const double nu = get<double>(in);
  const auto flags = get<std::uint8_t>(in);

  Snapshot snap{SpectralField(GridSpec(static_cast<int>(n), dealias_fraction)), nu};
  SpectralField& f = snap.field;
  f.set_time(time);
  f.set_solenoidal(flags & 1u);
  f.set_mean_free(flags & 2u);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (int c = 0; c < 3; ++c) {
      const double re = get<double>(in);
      const double im = get<double>(in);
      f.component(c)[i] = Complex(re, im);
    }
  }
  return snap;
}

Snapshot read_snapshot(const std::filesystem::path& path, double dealias_fraction) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_snapshot(in, dealias_fraction);
}

}  // namespace synergy
