#include <cmath>
#include <limits>
#include <optional>

#include "stepper.hpp"
#include "synergy/error.hpp"
#include "synergy/kernels.hpp"
#include "synergy/spectral_ops.hpp"

namespace synergy {

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::weak_galerkin: return "weak-galerkin";
    case Scheme::mild_duhamel: return "mild-duhamel";
    case Scheme::strong_imex: return "strong-imex";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "weak-galerkin") return Scheme::weak_galerkin;
  if (name == "mild-duhamel") return Scheme::mild_duhamel;
  if (name == "strong-imex") return Scheme::strong_imex;
  throw Error(ErrorCode::RangeError, "unknown scheme '" + name + "'");
}

void SolverParams::validate() const {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw Error(ErrorCode::RangeError, "nu must be >= 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::RangeError, "dt must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error(ErrorCode::RangeError, "t_end must be >= 0");
  if (cadence < 1) throw Error(ErrorCode::RangeError, "cadence must be >= 1");
  if (!(galerkin_cutoff >= 1.0)) throw Error(ErrorCode::BadCutoff, "Galerkin cutoff must be >= 1");
  if (forcing) require_solenoidal(*forcing, "forcing");
}

namespace {

constexpr double growth_limit = 1e3;
constexpr double bkm_limit = 1e6;

void guard(const SpectralField& u, double initial_norm, double s, bool check_bkm) {
  const double norm = sobolev_norm(u, s);
  if (!std::isfinite(norm) || norm > growth_limit * std::max(initial_norm, 1e-300)) {
    throw Error(ErrorCode::NumericalAbort, "H^s norm grew past the blow-up guard at t = " + std::to_string(u.time()));
  }
  if (check_bkm) {
    const double bkm = max_abs(curl(u));
    if (!std::isfinite(bkm) || bkm > bkm_limit) {
      throw Error(ErrorCode::NumericalAbort, "vorticity max-norm exceeded the guard at t = " + std::to_string(u.time()));
    }
  }
}

}  // namespace

Trajectory run(const SpectralField& u0, const SolverParams& params) {
  params.validate();
  if (params.scheme == Scheme::weak_galerkin && params.galerkin_cutoff > u0.grid().max_k2() &&
      std::isfinite(params.galerkin_cutoff)) {
    throw Error(ErrorCode::BadCutoff, "Galerkin cutoff exceeds the resolved modes");
  }
  Trajectory traj{params, {}, scheme_name(params.scheme)};

  SpectralField u = u0;
  if (!(u.solenoidal() && u.mean_free())) {
    require_solenoidal(u, "run");
    u = leray_project(u);
    u.remove_mean();
  }
  const bool galerkin = params.scheme == Scheme::weak_galerkin;
  if (galerkin) u = galerkin_truncate(u, params.galerkin_cutoff);
  traj.snapshots.push_back(u);
  if (params.t_end == 0.0) return traj;

  // forcing sets the scale when the datum is small or zero
  double initial_norm = sobolev_norm(u, params.guard_s);
  if (params.forcing) initial_norm = std::max(initial_norm, sobolev_norm(*params.forcing, params.guard_s));
  const auto steps = static_cast<long long>(std::ceil(params.t_end / params.dt - 1e-9));
  const double last_h = params.t_end - static_cast<double>(steps - 1) * params.dt;
  const detail::Stepper regular(u.grid(), params, params.dt);
  std::optional<detail::Stepper> tail;
  if (std::abs(last_h - params.dt) > 1e-12 * params.dt) tail.emplace(u.grid(), params, last_h);

  for (long long m = 1; m <= steps; ++m) {
    const bool last = m == steps;
    const detail::Stepper& stepper = last && tail ? *tail : regular;
    u = params.scheme == Scheme::mild_duhamel ? stepper.mild(u) : stepper.strong(u);
    if (galerkin) u = galerkin_truncate(u, params.galerkin_cutoff);
    detail::finish_step(u, last ? params.t_end : static_cast<double>(m) * params.dt);
    const bool record = last || m % params.cadence == 0;
    if (record || m % 16 == 0) guard(u, initial_norm, params.guard_s, record);
    if (record) traj.snapshots.push_back(u);
  }
  return traj;
}

Trajectory run_weak_galerkin(const SpectralField& u0, const SolverParams& params) {
  SolverParams p = params;
  p.scheme = Scheme::weak_galerkin;
  return run(u0, p);
}

SpectralField pressure_from_divergence(const SpectralField& force) {
  const auto table = WaveTable::get(force.grid());
  SpectralField p(force.grid());
  auto out = p.component(0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    Complex dot{};
    for (int a = 0; a < 3; ++a) dot += table->k_eff[a][i] * force.component(a)[i];
    // -Lap p = div F  =>  |k|^2 p = i k.F
    out[i] = Complex(-dot.imag(), dot.real()) * table->inv_k2_eff[i];
  }
  out[0] = 0.0;
  p.set_time(force.time());
  p.set_mean_free(true);
  return p;
}

SpectralField pressure_solve(const SpectralField& u) {
  require_solenoidal(u, "pressure_solve");
  return pressure_from_divergence(advection(u, u));
}

double lifespan_lower_bound(double u0_norm, double f_norm, double nu, double c_s) {
  if (u0_norm < 0.0 || f_norm < 0.0 || nu < 0.0 || c_s < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "lifespan bound needs non-negative inputs");
  }
  const double data = u0_norm * u0_norm + f_norm * f_norm;
  if (data == 0.0 || c_s == 0.0) return std::numeric_limits<double>::infinity();
  return nu / (4.0 * c_s * c_s * data);
}

}  // namespace synergy
