#include "synergy/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "synergy/error.hpp"
#include "synergy/kernels.hpp"

namespace synergy {

SpectralField::SpectralField(const GridSpec& grid) : grid_(grid) {
  for (auto& c : comp_) c.assign(grid_.size(), Complex{0.0, 0.0});
}

CVec3 SpectralField::mode(int k1, int k2, int k3) const {
  if (!grid_.resolves(k1) || !grid_.resolves(k2) || !grid_.resolves(k3)) {
    throw Error(ErrorCode::IndexOutOfRange, "wavenumber not resolved on this grid");
  }
  const std::size_t idx = grid_.flat_k(k1, k2, k3);
  return {comp_[0][idx], comp_[1][idx], comp_[2][idx]};
}

void SpectralField::set_mode(int k1, int k2, int k3, const CVec3& value) {
  if (!grid_.resolves(k1) || !grid_.resolves(k2) || !grid_.resolves(k3)) {
    throw Error(ErrorCode::IndexOutOfRange, "wavenumber not resolved on this grid");
  }
  const std::size_t idx = grid_.flat_k(k1, k2, k3);
  const std::size_t mirror = WaveTable::get(grid_)->mirror[idx];
  for (int c = 0; c < 3; ++c) {
    comp_[c][idx] = value[c];
    comp_[c][mirror] = std::conj(value[c]);
  }
  if (idx == mirror) {
    // Self-conjugate modes (zero or Nyquist) must be real.
    for (int c = 0; c < 3; ++c) comp_[c][idx] = value[c].real();
  }
}

void SpectralField::remove_mean() {
  for (auto& c : comp_) c[0] = 0.0;
  mean_free_ = true;
}

void SpectralField::fill_zero() {
  for (auto& c : comp_) std::fill(c.begin(), c.end(), Complex{0.0, 0.0});
}

void SpectralField::require_same_grid(const SpectralField& other) const {
  if (!(grid_ == other.grid_)) throw Error(ErrorCode::GridMismatch, "fields live on different grids");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) { return axpy(1.0, other); }

SpectralField& SpectralField::operator-=(const SpectralField& other) { return axpy(-1.0, other); }

SpectralField& SpectralField::operator*=(double a) {
  for (auto& c : comp_) {
    for (auto& v : c) v *= a;
  }
  return *this;
}

SpectralField& SpectralField::axpy(double a, const SpectralField& other) {
  require_same_grid(other);
  const auto& k = kernels::active();
  for (int c = 0; c < 3; ++c) {
    k.axpy(reinterpret_cast<double*>(comp_[c].data()), a,
           reinterpret_cast<const double*>(other.comp_[c].data()), 2 * comp_[c].size());
  }
  solenoidal_ = solenoidal_ && other.solenoidal_;
  mean_free_ = mean_free_ && other.mean_free_;
  return *this;
}

bool SpectralField::identical(const SpectralField& other) const {
  if (!(grid_ == other.grid_) || time_ != other.time_ || solenoidal_ != other.solenoidal_ ||
      mean_free_ != other.mean_free_) {
    return false;
  }
  for (int c = 0; c < 3; ++c) {
    if (std::memcmp(comp_[c].data(), other.comp_[c].data(), comp_[c].size() * sizeof(Complex)) != 0) {
      return false;
    }
  }
  return true;
}

PhysicalField::PhysicalField(const GridSpec& grid) : grid_(grid) {
  for (auto& c : comp_) c.assign(grid_.size(), 0.0);
}

double PhysicalField::coordinate(std::size_t flat, int axis) const {
  const std::size_t n = static_cast<std::size_t>(grid_.n());
  std::size_t index = flat;
  for (int a = 2; a > axis; --a) index /= n;
  return GridSpec::period * static_cast<double>(index % n) / static_cast<double>(n);
}

double hermitian_defect(const SpectralField& f) {
  const auto table = WaveTable::get(f.grid());
  double defect = 0.0;
  for (int c = 0; c < 3; ++c) {
    const auto comp = f.component(c);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      defect = std::max(defect, std::abs(comp[i] - std::conj(comp[table->mirror[i]])));
    }
  }
  return defect;
}

}  // namespace synergy
