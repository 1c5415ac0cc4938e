#include <algorithm>
#include <cmath>
#include <map>

#include "synergy/diagnostics.hpp"
#include "synergy/error.hpp"
#include "synergy/parallel.hpp"
#include "synergy/spectral_ops.hpp"

namespace synergy {

namespace {

// int B(x)^2 dx for the cardinal cubic B-spline on [0, 4].
constexpr double bspline_square_integral = 151.0 / 315.0;
constexpr double time_tol = 1e-9;

void require_snapshots(const Trajectory& traj, std::size_t count, const char* where) {
  if (traj.snapshots.size() < count) {
    throw Error(ErrorCode::TooFewSnapshots,
                std::string(where) + " needs >= " + std::to_string(count) + " snapshots");
  }
}

// Centred three-point derivative at snapshot m on a possibly uneven grid.
SpectralField centred_derivative(const std::vector<SpectralField>& snaps, std::size_t m) {
  const double h1 = snaps[m].time() - snaps[m - 1].time();
  const double h2 = snaps[m + 1].time() - snaps[m].time();
  SpectralField d = (-h2 / (h1 * (h1 + h2))) * snaps[m - 1];
  d.axpy((h2 - h1) / (h1 * h2), snaps[m]);
  d.axpy(h1 / (h2 * (h1 + h2)), snaps[m + 1]);
  return d;
}

// ||dt u + P[(u.grad)u] - nu Lap u - P f|| at interior snapshot m.
double strong_point(const std::vector<SpectralField>& snaps, std::size_t m, const SpectralField& projected_adv,
                    const SolverParams& params) {
  SpectralField r = centred_derivative(snaps, m);
  r += projected_adv;
  r.axpy(-params.nu, laplacian(snaps[m]));
  if (params.forcing) r -= leray_project(*params.forcing);
  return l2_norm(r);
}

SpectralField projected_advection(const SpectralField& u) { return leray_project(advection(u, u)); }

// Duhamel integral int_0^t e^{nu(t-tau)Lap} P[(u.grad)u] dtau, advanced by
// the trapezoidal rule one snapshot interval at a time.
class DuhamelAccumulator {
 public:
  DuhamelAccumulator(const SpectralField& u0, const SolverParams& params)
      : params_(params), u0_(u0), table_(WaveTable::get(u0.grid())), integral_(u0.grid()) {}

  void start(const SpectralField& n0) { last_ = n0; }

  void advance(double h, const SpectralField& next) {
    const std::vector<double>& decay = decay_for(h);
    integral_ += 0.5 * h * *last_;
    scale(integral_, decay);
    integral_.axpy(0.5 * h, next);
    last_ = next;
  }

  // ||u(t) - e^{nu t Lap} u0 + I(t) - int e^{nu(t-tau)Lap} f||_{H^s} / ||u0||_{H^s}
  double residual(const SpectralField& u, double t, double s) const {
    SpectralField r = u - heat_semigroup(u0_, params_.nu, t);
    r += integral_;
    if (params_.forcing) {
      SpectralField f = leray_project(*params_.forcing);
      for (int c = 0; c < 3; ++c) {
        auto comp = f.component(c);
        for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= forcing_weight(table_->k2[i], t);
      }
      r -= f;
    }
    const double scale_norm = sobolev_norm(u0_, s);
    const double norm = sobolev_norm(r, s);
    return scale_norm > 0.0 ? norm / scale_norm : norm;
  }

 private:
  // int_0^t exp(-nu k2 (t - tau)) dtau
  double forcing_weight(double k2, double t) const {
    const double z = params_.nu * k2 * t;
    if (z < 1e-8) return t * (1.0 - 0.5 * z);
    return -std::expm1(-z) / (params_.nu * k2);
  }

  const std::vector<double>& decay_for(double h) {
    auto it = decay_.find(h);
    if (it != decay_.end()) return it->second;
    std::vector<double> d(table_->k2.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::exp(-params_.nu * h * table_->k2[i]);
    return decay_.emplace(h, std::move(d)).first->second;
  }

  static void scale(SpectralField& f, const std::vector<double>& m) {
    for (int c = 0; c < 3; ++c) {
      auto comp = f.component(c);
      for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= m[i];
    }
  }

  const SolverParams& params_;
  const SpectralField& u0_;
  std::shared_ptr<const WaveTable> table_;
  SpectralField integral_;
  std::optional<SpectralField> last_;
  std::map<double, std::vector<double>> decay_;
};

// Spatial parts of one test function, prepared once.
struct PreparedTest {
  const SpaceTimeTest* test;
  SpectralField neg_laplacian;
  SpectralField divergence;
  double spatial_norm;
  double forcing_pairing;
};

std::vector<PreparedTest> prepare_tests(const std::vector<SpaceTimeTest>& tests, const GridSpec& grid,
                                        const SolverParams& params) {
  std::vector<PreparedTest> prepared;
  for (const auto& test : tests) {
    if (!(test.spatial.grid() == grid)) throw Error(ErrorCode::GridMismatch, "test field grid");
    if (!(test.t_end > test.t_begin)) throw Error(ErrorCode::InvalidArgument, "empty test support in time");
    const double defect = divergence_defect(test.spatial);
    if (defect > 1e-9) {
      throw Error(ErrorCode::NonSolenoidalTest, "test field divergence defect " + std::to_string(defect));
    }
    SpectralField neg_lap = laplacian(test.spatial);
    neg_lap *= -1.0;
    const double forcing = params.forcing ? inner_product(*params.forcing, test.spatial) : 0.0;
    prepared.push_back({&test, std::move(neg_lap), divergence(test.spatial), l2_norm(test.spatial), forcing});
  }
  return prepared;
}

// Per-snapshot pairings: a = <u, w>, b = <A, w> + nu <grad u, grad w> - <p, div w> - <f, w>.
struct Pairings {
  std::vector<double> a;
  std::vector<double> b;
};

Pairings pair_snapshot(const SpectralField& u, const SpectralField& adv, const SpectralField& pressure,
                       const std::vector<PreparedTest>& tests, double nu) {
  Pairings out;
  for (const auto& t : tests) {
    out.a.push_back(inner_product(u, t.test->spatial));
    out.b.push_back(inner_product(adv, t.test->spatial) + nu * inner_product(u, t.neg_laplacian) -
                    inner_product(pressure, t.divergence) - t.forcing_pairing);
  }
  return out;
}

// Weak residual of one test over snapshots [0, last], trapezoidal in time.
double weak_integral(const std::vector<double>& times, const std::vector<Pairings>& pairs, std::size_t index,
                     double spatial_norm, double tb, double te, std::size_t last) {
  auto integrand = [&](std::size_t j) {
    return -cubic_bspline_derivative(times[j], tb, te) * pairs[j].a[index] +
           cubic_bspline(times[j], tb, te) * pairs[j].b[index];
  };
  double total = 0.0;
  double prev = integrand(0);
  for (std::size_t j = 1; j <= last; ++j) {
    const double cur = integrand(j);
    total += 0.5 * (times[j] - times[j - 1]) * (prev + cur);
    prev = cur;
  }
  total -= cubic_bspline(times[0], tb, te) * pairs[0].a[index];
  const double norm = spatial_norm * std::sqrt(0.25 * (te - tb) * bspline_square_integral);
  return norm > 0.0 ? std::abs(total) / norm : 0.0;
}

std::vector<double> snapshot_times(const Trajectory& traj) {
  std::vector<double> times;
  for (const auto& s : traj.snapshots) times.push_back(s.time());
  return times;
}

}  // namespace

double weak_form_residual(const Trajectory& traj, const std::vector<SpectralField>& pressure,
                          const std::vector<SpaceTimeTest>& tests) {
  require_snapshots(traj, 2, "weak_form_residual");
  const auto& snaps = traj.snapshots;
  if (!pressure.empty() && pressure.size() != snaps.size()) {
    throw Error(ErrorCode::TimeGridMismatch, "one pressure field per snapshot required");
  }
  const auto times = snapshot_times(traj);
  for (const auto& t : tests) {
    if (t.t_begin < times.front() - time_tol || t.t_end > times.back() + time_tol) {
      throw Error(ErrorCode::InvalidArgument, "test support leaves the trajectory span");
    }
  }
  const auto prepared = prepare_tests(tests, snaps.front().grid(), traj.params);
  std::vector<Pairings> pairs(snaps.size());
  parallel_for(snaps.size(), [&](std::size_t m) {
    const SpectralField adv = advection(snaps[m], snaps[m]);
    const SpectralField p = pressure.empty() ? pressure_from_divergence(adv) : pressure[m];
    pairs[m] = pair_snapshot(snaps[m], adv, p, prepared, traj.params.nu);
  });
  double worst = 0.0;
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    worst = std::max(worst, weak_integral(times, pairs, i, prepared[i].spatial_norm, prepared[i].test->t_begin,
                                             prepared[i].test->t_end, snaps.size() - 1));
  }
  return worst;
}

double mild_residual(const Trajectory& traj, const SolverParams& params, double s) {
  require_snapshots(traj, 1, "mild_residual");
  const auto& snaps = traj.snapshots;
  if (snaps.size() == 1) return 0.0;
  std::vector<SpectralField> nonlinear(snaps.size(), SpectralField(snaps.front().grid()));
  parallel_for(snaps.size(), [&](std::size_t m) { nonlinear[m] = projected_advection(snaps[m]); });
  DuhamelAccumulator acc(snaps.front(), params);
  acc.start(nonlinear.front());
  for (std::size_t m = 1; m < snaps.size(); ++m) acc.advance(snaps[m].time() - snaps[m - 1].time(), nonlinear[m]);
  return acc.residual(snaps.back(), snaps.back().time() - snaps.front().time(), s);
}

double strong_residual(const Trajectory& traj, const SolverParams& params) {
  require_snapshots(traj, 3, "strong_residual");
  const auto& snaps = traj.snapshots;
  std::vector<double> values(snaps.size() - 2);
  parallel_for(values.size(), [&](std::size_t i) {
    values[i] = strong_point(snaps, i + 1, projected_advection(snaps[i + 1]), params);
  });
  return *std::max_element(values.begin(), values.end());
}

double vorticity_residual(const Trajectory& traj, const SolverParams& params) {
  require_snapshots(traj, 3, "vorticity_residual");
  const auto& snaps = traj.snapshots;
  std::vector<double> values(snaps.size() - 2);
  parallel_for(values.size(), [&](std::size_t i) {
    const std::size_t m = i + 1;
    const SpectralField& u = snaps[m];
    const SpectralField w = curl(u);
    SpectralField r = curl(centred_derivative(snaps, m));
    r += advection(u, w);
    r -= advection(w, u);
    r.axpy(-params.nu, laplacian(w));
    if (params.forcing) r -= curl(*params.forcing);
    values[i] = l2_norm(r);
  });
  return *std::max_element(values.begin(), values.end());
}

std::vector<DiagnosticsRecord> diagnose(const Trajectory& traj, const std::vector<double>& s_list) {
  require_snapshots(traj, 1, "diagnose");
  const auto& snaps = traj.snapshots;
  const SolverParams& params = traj.params;
  const std::size_t count = snaps.size();
  const auto times = snapshot_times(traj);
  const auto battery = default_test_battery(snaps.front().grid(), 0.0, 1.0);
  const auto prepared = prepare_tests(battery, snaps.front().grid(), params);

  std::vector<DiagnosticsRecord> records(count);
  std::vector<Pairings> pairs(count);
  std::vector<double> strong_points(count, 0.0);
  DuhamelAccumulator acc(snaps.front(), params);

  // Snapshots are processed in blocks so only one block of nonlinear terms is held.
  constexpr std::size_t block = 64;
  for (std::size_t first = 0; first < count; first += block) {
    const std::size_t last = std::min(count, first + block);
    std::vector<SpectralField> nonlinear(last - first, SpectralField(snaps.front().grid()));
    parallel_for(last - first, [&](std::size_t i) {
      const std::size_t m = first + i;
      const SpectralField& u = snaps[m];
      const SpectralField adv = advection(u, u);
      nonlinear[i] = leray_project(adv);
      pairs[m] = pair_snapshot(u, adv, pressure_from_divergence(adv), prepared, params.nu);
      if (m > 0 && m + 1 < count) strong_points[m] = strong_point(snaps, m, nonlinear[i], params);
      DiagnosticsRecord& rec = records[m];
      rec.t = u.time();
      rec.energy = kinetic_energy(u);
      rec.enstrophy = enstrophy(u);
      rec.bkm = bkm_monitor(u);
      rec.div_defect = divergence_defect(u);
      for (double s : s_list) rec.hs_norms[s] = sobolev_norm(u, s);
    });
    for (std::size_t i = 0; i < nonlinear.size(); ++i) {
      const std::size_t m = first + i;
      if (m == 0) {
        acc.start(nonlinear[i]);
      } else {
        acc.advance(times[m] - times[m - 1], nonlinear[i]);
        records[m].res_mild = acc.residual(snaps[m], times[m] - times[0], 1.0);
      }
    }
  }

  // The prefix ending at m has interior snapshots 1 .. m-1.
  double prefix = 0.0;
  for (std::size_t m = 0; m < count; ++m) {
    records[m].res_strong = prefix;
    if (m >= 1 && m + 1 < count) prefix = std::max(prefix, strong_points[m]);
  }

  parallel_for(count, [&](std::size_t m) {
    if (m < 1 || !(times[m] > times[0])) return;
    double worst = 0.0;
    for (std::size_t i = 0; i < prepared.size(); ++i) {
      worst = std::max(worst, weak_integral(times, pairs, i, prepared[i].spatial_norm, times[0], times[m], m));
    }
    records[m].res_weak = worst;
  });
  return records;
}

}  // namespace synergy
