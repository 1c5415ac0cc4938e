#pragma once

#include <vector>

#include "synergy/ns_solvers.hpp"

namespace synergy::detail {

/// Multiplier tables for one (grid, nu, h) triple, reused across steps.
class Stepper {
 public:
  Stepper(const GridSpec& grid, const SolverParams& params, double h);

  double h() const noexcept { return h_; }
  SpectralField strong(const SpectralField& u) const;
  SpectralField mild(const SpectralField& u) const;

 private:
  // -P[(u.grad)u] + f; records the lattice max speed of u.
  SpectralField rhs(const SpectralField& u, double* max_speed) const;
  void scaled(SpectralField& f, const std::vector<double>& m) const;

  GridSpec grid_;
  const SolverParams& params_;
  double h_;
  std::vector<double> decay_;  // exp(-nu h |k|^2)
  std::vector<double> phi1_;
  std::vector<double> phi2_;
};

/// Projects, removes the mean and stamps the time.
void finish_step(SpectralField& u, double time);

}  // namespace synergy::detail
