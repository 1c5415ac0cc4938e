#include <cmath>
#include <numbers>

#include "synergy/diagnostics.hpp"
#include "synergy/error.hpp"
#include "synergy/kernels.hpp"
#include "synergy/spectral_ops.hpp"

namespace synergy {

double kinetic_energy(const SpectralField& u) {
  const double norm = l2_norm(u);
  return 0.5 * norm * norm;
}

double enstrophy(const SpectralField& u) {
  const auto table = WaveTable::get(u.grid());
  double total = 0.0;
  for (int c = 0; c < 3; ++c) total += kernels::active().weighted_norm2(u.component(c).data(), table->k2.data(), u.size());
  return total;
}

double bkm_monitor(const SpectralField& u) { return max_abs(curl(u)); }

std::vector<double> energy_identity_residual(const Trajectory& traj, const SolverParams& params) {
  const auto& snaps = traj.snapshots;
  if (snaps.size() < 2) throw Error(ErrorCode::TooFewSnapshots, "energy identity needs >= 2 snapshots");
  auto work = [&](const SpectralField& u) {
    double w = params.nu * enstrophy(u);
    if (params.forcing) w -= inner_product(*params.forcing, u);
    return w;
  };
  std::vector<double> defects;
  double prev_energy = kinetic_energy(snaps[0]);
  double prev_work = work(snaps[0]);
  for (std::size_t m = 1; m < snaps.size(); ++m) {
    const double h = snaps[m].time() - snaps[m - 1].time();
    const double energy = kinetic_energy(snaps[m]);
    const double w = work(snaps[m]);
    defects.push_back(std::abs(energy - prev_energy + 0.5 * h * (prev_work + w)));
    prev_energy = energy;
    prev_work = w;
  }
  return defects;
}

double cubic_bspline(double t, double t_begin, double t_end) {
  const double h = 0.25 * (t_end - t_begin);
  const double x = (t - t_begin) / h;
  if (x <= 0.0 || x >= 4.0) return 0.0;
  if (x < 1.0) return x * x * x / 6.0;
  if (x < 2.0) return (((-3.0 * x + 12.0) * x - 12.0) * x + 4.0) / 6.0;
  if (x < 3.0) return (((3.0 * x - 24.0) * x + 60.0) * x - 44.0) / 6.0;
  const double r = 4.0 - x;
  return r * r * r / 6.0;
}

double cubic_bspline_derivative(double t, double t_begin, double t_end) {
  const double h = 0.25 * (t_end - t_begin);
  const double x = (t - t_begin) / h;
  double d = 0.0;
  if (x <= 0.0 || x >= 4.0) {
    d = 0.0;
  } else if (x < 1.0) {
    d = 0.5 * x * x;
  } else if (x < 2.0) {
    d = ((-9.0 * x + 24.0) * x - 12.0) / 6.0;
  } else if (x < 3.0) {
    d = ((9.0 * x - 48.0) * x + 60.0) / 6.0;
  } else {
    const double r = 4.0 - x;
    d = -0.5 * r * r;
  }
  return d / h;
}

std::vector<SpaceTimeTest> default_test_battery(const GridSpec& grid, double t_begin, double t_end) {
  std::vector<SpaceTimeTest> tests;
  const double amp = 1.0 / std::numbers::sqrt2;
  for (int axis = 0; axis < 3; ++axis) {
    std::array<int, 3> k{0, 0, 0};
    k[axis] = 1;
    for (int pol : {(axis + 1) % 3, (axis + 2) % 3}) {
      for (bool sine : {false, true}) {
        SpectralField w(grid);
        CVec3 value{};
        value[pol] = sine ? Complex(0.0, -amp) : Complex(amp, 0.0);
        w.set_mode(k[0], k[1], k[2], value);
        w.set_solenoidal(true);
        w.set_mean_free(true);
        tests.push_back({std::move(w), t_begin, t_end});
      }
    }
  }
  return tests;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::DegenerateSequence, "slope needs >= 2 points");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw Error(ErrorCode::DegenerateSequence, "slope needs positive finite values");
    }
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw Error(ErrorCode::DegenerateSequence, "slope over identical abscissae");
  return sxy / sxx;
}

}  // namespace synergy
