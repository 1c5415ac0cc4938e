#include <cmath>

#include "stepper.hpp"
#include "synergy/error.hpp"
#include "synergy/kernels.hpp"
#include "synergy/spectral_ops.hpp"

namespace synergy {
namespace detail {
namespace {

double phi1(double z) { return z == 0.0 ? 1.0 : std::expm1(z) / z; }

double phi2(double z) {
  if (std::abs(z) < 1e-2) return 0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z * (1.0 / 120.0 + z / 720.0)));
  return (std::expm1(z) - z) / (z * z);
}

}  // namespace

Stepper::Stepper(const GridSpec& grid, const SolverParams& params, double h)
    : grid_(grid), params_(params), h_(h) {
  const auto table = WaveTable::get(grid);
  const std::size_t size = grid.size();
  decay_.resize(size);
  phi1_.resize(size);
  phi2_.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    const double z = -params.nu * h * table->k2[i];
    decay_[i] = std::exp(z);
    phi1_[i] = h * phi1(z);
    phi2_[i] = h * phi2(z);
  }
}

void Stepper::scaled(SpectralField& f, const std::vector<double>& m) const {
  for (int c = 0; c < 3; ++c) kernels::active().scale(f.component(c).data(), m.data(), f.size());
}

SpectralField Stepper::rhs(const SpectralField& u, double* max_speed) const {
  require_solenoidal(u, "solver step");
  AdvectionResult adv = advection_with_speed(u, u);
  if (max_speed) *max_speed = adv.max_speed;
  SpectralField r = leray_project(adv.term);
  r.remove_mean();
  r *= -1.0;
  if (params_.forcing) r += *params_.forcing;
  r.set_solenoidal(true);
  return r;
}

SpectralField Stepper::strong(const SpectralField& u) const {
  double speed = 0.0;
  const SpectralField a = rhs(u, &speed);
  check_cfl(grid_, h_, speed);
  SpectralField stage = u;
  stage.axpy(h_, a);
  scaled(stage, decay_);
  stage.set_solenoidal(true);
  const SpectralField b = rhs(stage, nullptr);

  SpectralField next = u;
  next.axpy(0.5 * h_, a);
  scaled(next, decay_);
  next.axpy(0.5 * h_, b);
  return next;
}

SpectralField Stepper::mild(const SpectralField& u) const {
  double speed = 0.0;
  const SpectralField a = rhs(u, &speed);
  check_cfl(grid_, h_, speed);
  // stage = e^{hL} u + h phi1(hL) a
  SpectralField stage = u;
  scaled(stage, decay_);
  SpectralField pa = a;
  scaled(pa, phi1_);
  stage += pa;
  stage.set_solenoidal(true);
  const SpectralField b = rhs(stage, nullptr);
  // next = stage + h phi2(hL) (b - a)
  SpectralField diff = b - a;
  scaled(diff, phi2_);
  return stage + diff;
}

void finish_step(SpectralField& u, double time) {
  u = leray_project(u);
  u.remove_mean();
  u.set_time(time);
}

}  // namespace detail

void check_cfl(const GridSpec& grid, double dt, double max_speed) {
  if (max_speed > 0.0 && dt > 0.5 / (grid.n() * max_speed)) {
    throw Error(ErrorCode::CflViolation, "dt " + std::to_string(dt) + " exceeds advective limit " +
                                             std::to_string(0.5 / (grid.n() * max_speed)));
  }
}

SpectralField step_strong(const SpectralField& u, const SolverParams& params) {
  params.validate();
  SpectralField next = detail::Stepper(u.grid(), params, params.dt).strong(u);
  detail::finish_step(next, u.time() + params.dt);
  return next;
}

SpectralField step_mild(const SpectralField& u, const SolverParams& params) {
  params.validate();
  SpectralField next = detail::Stepper(u.grid(), params, params.dt).mild(u);
  detail::finish_step(next, u.time() + params.dt);
  return next;
}

SpectralField galerkin_truncate(const SpectralField& u, double cutoff) {
  if (!(cutoff >= 1.0)) throw Error(ErrorCode::BadCutoff, "Galerkin cutoff must be >= 1");
  if (cutoff >= u.grid().max_k2()) return u;
  const auto table = WaveTable::get(u.grid());
  std::vector<double> mask(u.size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = table->k2[i] <= cutoff ? 1.0 : 0.0;
  SpectralField out = u;
  for (int c = 0; c < 3; ++c) kernels::active().scale(out.component(c).data(), mask.data(), out.size());
  return out;
}

}  // namespace synergy
