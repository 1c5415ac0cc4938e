#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "synergy/field.hpp"

namespace synergy {

enum class Scheme { weak_galerkin, mild_duhamel, strong_imex };

std::string scheme_name(Scheme scheme);
Scheme parse_scheme(const std::string& name);

struct SolverParams {
  double nu = 0.1;
  double dt = 1e-3;
  double t_end = 0.1;
  Scheme scheme = Scheme::strong_imex;
  /// Galerkin cutoff lambda_N: modes with |k|^2 > lambda_N are removed.
  double galerkin_cutoff = std::numeric_limits<double>::infinity();
  /// Steady solenoidal forcing; none when empty.
  std::optional<SpectralField> forcing;
  std::uint64_t seed = 0;
  /// Snapshot every `cadence` steps (the final state is always kept).
  int cadence = 1;
  /// Sobolev index watched by the blow-up guard.
  double guard_s = 2.0;

  void validate() const;
};

struct Trajectory {
  SolverParams params;
  std::vector<SpectralField> snapshots;
  std::string scheme;
};

// Initial data.
SpectralField taylor_green_init(const GridSpec& grid);
/// u = amplitude * (sin x1) e2, an exact decaying solution.
SpectralField shear_init(const GridSpec& grid, double amplitude = 1.0);
/// Random field with |u_hat(k)| ~ (1 + |k|^2)^-(s+1), projected, mean-free
/// and normalised to ||u||_{H^s} = 1.
SpectralField random_solenoidal_init(const GridSpec& grid, double s, std::uint64_t seed);

/// Throws CflViolation unless dt <= 0.5 / (n max|u|).
void check_cfl(const GridSpec& grid, double dt, double max_speed);

/// Integrating-factor Heun step.
SpectralField step_strong(const SpectralField& u, const SolverParams& params);
/// Exponential-trapezoidal Duhamel step.
SpectralField step_mild(const SpectralField& u, const SolverParams& params);
/// Zeroes modes with |k|^2 > cutoff.
SpectralField galerkin_truncate(const SpectralField& u, double cutoff);

Trajectory run(const SpectralField& u0, const SolverParams& params);
Trajectory run_weak_galerkin(const SpectralField& u0, const SolverParams& params);

/// Pressure with -Lap p = div[(u.grad)u], zero mean, scalar in component 0.
SpectralField pressure_solve(const SpectralField& u);
/// Pressure with -Lap p = div F for a given force density.
SpectralField pressure_from_divergence(const SpectralField& force);

/// nu / (4 C_s^2 (||u0||^2 + ||f||^2)) with C_s = c_s (lambda_1 = 1 on the
/// mean-free torus). Returns +inf when the data vanish.
double lifespan_lower_bound(double u0_norm, double f_norm, double nu, double c_s);

}  // namespace synergy
