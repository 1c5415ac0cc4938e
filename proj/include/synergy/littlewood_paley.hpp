#pragma once

#include <array>
#include <vector>

#include "synergy/field.hpp"

namespace synergy {

/// Radial dyadic profile: rises on [1/2, 1], falls on [1, 2] (raised cosine),
/// so that chi(r) + chi(2r) = 1 on [1/2, 1].
double dyadic_profile(double r);

/// Blocks j = 0..jmax cover every nonzero resolved wavenumber; the k = 0
/// mode forms the separate low block j = -1.
class DyadicPartition {
 public:
  static constexpr int low_block = -1;

  explicit DyadicPartition(const GridSpec& grid);

  const GridSpec& grid() const noexcept { return grid_; }
  int jmin() const noexcept { return low_block; }
  int jmax() const noexcept { return jmax_; }

  /// Weight of block j at |k| = kmag (j = -1 is the indicator of k = 0).
  double weight(int j, double kmag) const;
  void require_block(int j) const;

 private:
  GridSpec grid_;
  int jmax_;
};

SpectralField dyadic_block(const SpectralField& u, const DyadicPartition& partition, int j);
/// S_{j-1} u = sum of blocks j' <= j - 2, including the low block.
SpectralField low_pass(const SpectralField& u, const DyadicPartition& partition, int j);

/// sum_j ||Delta_j u||^2 / ||u||^2 over all blocks including j = -1.
double almost_orthogonality_ratio(const SpectralField& u, const DyadicPartition& partition);

/// Per-block energies ||Delta_j u||^2, index 0 holding j = -1.
std::vector<double> block_energies(const SpectralField& u, const DyadicPartition& partition);

enum class LpExponent { one, two, infinity };

/// Lattice-quadrature L^p norm of the vector magnitude.
double lattice_norm(const SpectralField& u, LpExponent p);

struct BernsteinMeasurement {
  double lhs;        // ||d^alpha Delta_j u||_{L^q}
  double rhs_scale;  // 2^{j(|alpha| + 3(1/p - 1/q))} ||Delta_j u||_{L^p}
  double ratio() const { return rhs_scale > 0.0 ? lhs / rhs_scale : 0.0; }
};

/// Throws SupportViolation when u has spectral mass outside the j-annulus
/// 2^{j-1} <= |k| <= 2^{j+1} above 1e-10 relative.
BernsteinMeasurement bernstein_check(const SpectralField& u, const DyadicPartition& partition, int j,
                                     const std::array<int, 3>& alpha, LpExponent p, LpExponent q);

/// Frozen Bernstein constants at the calibration grid n = 32.
double bernstein_constant(int alpha_order, LpExponent p, LpExponent q);

struct Paraproduct {
  SpectralField low_high;   // sum_j S_{j-1}u . grad Delta_j u
  SpectralField high_low;   // sum_j Delta_j u . grad S_{j-1}u
  SpectralField resonant;   // sum_{|j-j'|<=1} Delta_j u . grad Delta_j' u
};

/// Bony decomposition of (u.grad)u, each piece dealiased like `advection`.
Paraproduct paraproduct_decompose(const SpectralField& u, const DyadicPartition& partition);

/// sum over all block pairs of ||Delta_j u . grad Delta_j' u||_{L^p}.
double interaction_pair_sum(const SpectralField& u, const DyadicPartition& partition, LpExponent p);

/// ||(u.grad)u||_{H^{s-1}} / ||u||_{H^s}^2 for s > 3/2.
double commutator_bound_ratio(const SpectralField& u, double s);

}  // namespace synergy
