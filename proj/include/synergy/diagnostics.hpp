#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "synergy/freq_operators.hpp"
#include "synergy/ns_solvers.hpp"

namespace synergy {

double kinetic_energy(const SpectralField& u);
/// ||grad u||^2 = sum |k|^2 |u_hat|^2
double enstrophy(const SpectralField& u);
/// Lattice max of |curl u|.
double bkm_monitor(const SpectralField& u);

struct DiagnosticsRecord {
  double t = 0.0;
  double energy = 0.0;
  double enstrophy = 0.0;
  double bkm = 0.0;
  double div_defect = 0.0;
  double res_weak = 0.0;
  double res_mild = 0.0;
  double res_strong = 0.0;
  std::map<double, double> hs_norms;
};

/// One record per snapshot. Residual columns are evaluated on the prefix of
/// the trajectory ending at that snapshot.
std::vector<DiagnosticsRecord> diagnose(const Trajectory& traj, const std::vector<double>& s_list);

/// |E(t_{m+1}) - E(t_m) + nu int ||grad u||^2 - int <f,u>| per interval,
/// trapezoidal in time.
std::vector<double> energy_identity_residual(const Trajectory& traj, const SolverParams& params);

/// Space-time test function v(x,t) = bump(t) w(x): w a real solenoidal
/// field of unit L2 norm, bump the cubic B-spline on [t_begin, t_end].
struct SpaceTimeTest {
  SpectralField spatial;
  double t_begin;
  double t_end;
};

double cubic_bspline(double t, double t_begin, double t_end);
double cubic_bspline_derivative(double t, double t_begin, double t_end);

/// The cos and sin modes of the three unit wavevectors, two polarisations
/// each: twelve tests on [t_begin, t_end].
std::vector<SpaceTimeTest> default_test_battery(const GridSpec& grid, double t_begin, double t_end);

/// max over tests of |int [-<u, dt v> + <(u.grad)u, v> + nu <grad u, grad v>
/// - <p, div v> - <f, v>] dt - <u0, v(0)>| / ||v||, trapezoidal in time.
double weak_form_residual(const Trajectory& traj, const std::vector<SpectralField>& pressure,
                          const std::vector<SpaceTimeTest>& tests);

/// ||u(T) - e^{nu T Lap} u0 + int e^{nu(T-t)Lap} P[(u.grad)u] - int e^{..} f||_{H^s}
/// / ||u0||_{H^s}.
double mild_residual(const Trajectory& traj, const SolverParams& params, double s = 1.0);

/// max over interior snapshots of ||dt u + P[(u.grad)u] - nu Lap u - P f||_{L2},
/// with centred differences in time.
double strong_residual(const Trajectory& traj, const SolverParams& params);

/// Same for the vorticity equation.
double vorticity_residual(const Trajectory& traj, const SolverParams& params);

struct Reconstruction {
  Trajectory trajectory;
  double max_parseval_defect = 0.0;
};

/// Per snapshot: regularize each input, blend, smooth, and invert.
Reconstruction unify_and_reconstruct(const Trajectory& weak, const Trajectory& mild, const Trajectory& strong,
                                     const WeightPartition& w, const MollifierSpec& spec,
                                     InterpolationVariant variant = InterpolationVariant::weighted);

/// One snapshot of the pipeline S_eps I_eps(R_eps uw, R_eps um, R_eps us).
SpectralField unify_snapshot(const SpectralField& uw, const SpectralField& um, const SpectralField& us,
                             const WeightPartition& w, const MollifierSpec& spec,
                             InterpolationVariant variant = InterpolationVariant::weighted);

struct ConvergenceTable {
  std::vector<double> eps;
  std::vector<double> errors;
  double slope = 0.0;     // least-squares log-log slope over nonzero errors
  bool monotone = false;  // errors non-increasing as eps decreases
  bool exact = false;     // every error is zero
};

/// Errors ||pipeline(eps) - reference||_{H^s}. Without a reference the
/// finest-eps result is used and excluded from the fit.
ConvergenceTable convergence_study(const std::function<SpectralField(double)>& pipeline,
                                   const std::vector<double>& eps_seq, double s,
                                   const std::optional<SpectralField>& reference = std::nullopt);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace synergy
