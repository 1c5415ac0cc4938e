#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <numbers>
#include <vector>

namespace synergy {

/// Uniform collocation grid on the periodic cube [0, 2pi)^3.
///
/// Wavenumbers along each axis are stored in FFT order
/// 0, 1, ..., n/2, -n/2+1, ..., -1 with k1 the slowest index.
class GridSpec {
 public:
  static constexpr double period = 2.0 * std::numbers::pi;
  static constexpr double default_dealias = 2.0 / 3.0;

  explicit GridSpec(int n, double dealias_fraction = default_dealias);

  int n() const noexcept { return n_; }
  double dealias_fraction() const noexcept { return dealias_fraction_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * n_ * n_; }

  int wavenumber(int index) const noexcept { return index <= n_ / 2 ? index : index - n_; }
  int index_of(int k) const noexcept { return k >= 0 ? k : k + n_; }
  bool resolves(int k) const noexcept { return k > -n_ / 2 && k <= n_ / 2; }

  std::size_t flat(int i1, int i2, int i3) const noexcept {
    return (static_cast<std::size_t>(i1) * n_ + i2) * n_ + i3;
  }
  /// Flat storage index of wavenumber (k1,k2,k3); all must be resolved.
  std::size_t flat_k(int k1, int k2, int k3) const noexcept {
    return flat(index_of(k1), index_of(k2), index_of(k3));
  }

  /// Largest |k_axis| kept by the dealiasing mask.
  int dealias_cutoff() const noexcept;
  /// Largest |k|^2 on the grid.
  double max_k2() const noexcept { return 3.0 * (n_ / 2) * (n_ / 2); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int n_;
  double dealias_fraction_;
};

/// Per-grid wavenumber tables shared by every field on that grid.
///
/// `k_eff` zeroes the Nyquist component of each axis so that derivatives and
/// the Leray projector map real fields to real fields; `k2` is the true |k|^2
/// used by radial multipliers.
struct WaveTable {
  std::array<std::vector<double>, 3> k_eff;
  std::vector<double> k2;
  std::vector<double> inv_k2_eff;
  std::vector<double> dealias_mask;
  std::vector<std::size_t> mirror;  // storage index of -k

  static std::shared_ptr<const WaveTable> get(const GridSpec& grid);
};

}  // namespace synergy
