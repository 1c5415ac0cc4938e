#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "synergy/grid.hpp"

namespace synergy {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;

/// Truncated Fourier coefficients of a real 3-vector field,
/// u(x) = sum_k u_hat(k) exp(i k.x), stored component-major.
class SpectralField {
 public:
  explicit SpectralField(const GridSpec& grid);

  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return grid_.size(); }

  std::span<Complex> component(int c) { return comp_[c]; }
  std::span<const Complex> component(int c) const { return comp_[c]; }

  CVec3 mode(int k1, int k2, int k3) const;
  /// Sets u_hat(k) = value and u_hat(-k) = conj(value).
  void set_mode(int k1, int k2, int k3, const CVec3& value);

  double time() const noexcept { return time_; }
  void set_time(double t) noexcept { time_ = t; }
  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  bool solenoidal() const noexcept { return solenoidal_; }
  bool mean_free() const noexcept { return mean_free_; }
  void set_solenoidal(bool flag) noexcept { solenoidal_ = flag; }
  void set_mean_free(bool flag) noexcept { mean_free_ = flag; }

  /// Zeroes u_hat(0) and sets the mean-free flag.
  void remove_mean();
  void fill_zero();

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double a);
  /// this += a * other
  SpectralField& axpy(double a, const SpectralField& other);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double a, SpectralField f) { return f *= a; }

  /// Bitwise comparison of grid, coefficients, time and flags.
  bool identical(const SpectralField& other) const;

 private:
  void require_same_grid(const SpectralField& other) const;

  GridSpec grid_;
  std::array<std::vector<Complex>, 3> comp_;
  double time_ = 0.0;
  std::string label_;
  bool solenoidal_ = false;
  bool mean_free_ = false;
};

/// Samples of a real 3-vector field at x = 2pi (i1, i2, i3) / n.
class PhysicalField {
 public:
  explicit PhysicalField(const GridSpec& grid);

  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return grid_.size(); }

  std::span<double> component(int c) { return comp_[c]; }
  std::span<const double> component(int c) const { return comp_[c]; }

  /// Lattice coordinate of flat index along `axis`.
  double coordinate(std::size_t flat, int axis) const;

 private:
  GridSpec grid_;
  std::array<std::vector<double>, 3> comp_;
};

/// Max |u_hat(k) - conj(u_hat(-k))| over all k and components.
double hermitian_defect(const SpectralField& f);

}  // namespace synergy
