#include <doctest.h>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "oracles.hpp"
#include "synergy/diagnostics.hpp"
#include "synergy/error.hpp"
#include "synergy/spectral_ops.hpp"

using namespace synergy;
using testing::rel_diff;

namespace {

SolverParams params(double nu, double dt, double t_end, Scheme scheme = Scheme::strong_imex) {
  SolverParams p;
  p.nu = nu;
  p.dt = dt;
  p.t_end = t_end;
  p.scheme = scheme;
  return p;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

SpectralField zero_field(const GridSpec& grid) {
  SpectralField z(grid);
  z.set_solenoidal(true);
  return z;
}

// Exact shear solution (sin x1) e^{-nu t} e2 sampled on the given times.
Trajectory exact_shear(const GridSpec& grid, double nu, const std::vector<double>& times) {
  Trajectory traj{params(nu, times.size() > 1 ? times[1] - times[0] : 1.0, times.back()), {}, "exact"};
  for (double t : times) {
    SpectralField u = shear_init(grid, std::exp(-nu * t));
    u.set_time(t);
    traj.snapshots.push_back(u);
  }
  return traj;
}

std::vector<double> uniform_times(double t_end, int steps) {
  std::vector<double> t;
  for (int i = 0; i <= steps; ++i) t.push_back(t_end * i / steps);
  return t;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("observables") {
  const GridSpec grid(16);
  const SpectralField tg = taylor_green_init(grid);
  const SpectralField shear = shear_init(grid);
  CHECK(kinetic_energy(tg) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(kinetic_energy(shear) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(kinetic_energy(zero_field(grid)) == 0.0);
  CHECK(enstrophy(shear) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(enstrophy(tg) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(bkm_monitor(shear) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(bkm_monitor(2.0 * tg) == doctest::Approx(2.0 * bkm_monitor(tg)).epsilon(1e-14));
  CHECK(bkm_monitor(zero_field(grid)) == 0.0);
  // TG vorticity magnitude peaks at 2 on lattice points such as x = 0
  CHECK(bkm_monitor(tg) == doctest::Approx(2.0).epsilon(1e-14));

  // along the mild trajectory the shear monitor decays like e^{-nu t}
  SolverParams p = params(0.5, 1e-2, 0.5, Scheme::mild_duhamel);
  p.cadence = 10;
  for (const auto& u : run(shear, p).snapshots) {
    CHECK(bkm_monitor(u) == doctest::Approx(std::exp(-0.5 * u.time())).epsilon(1e-13));
  }
}

TEST_CASE("cubic B-spline bump") {
  CHECK(cubic_bspline(0.0, 0.0, 1.0) == 0.0);
  CHECK(cubic_bspline(1.0, 0.0, 1.0) == 0.0);
  CHECK(cubic_bspline(-0.1, 0.0, 1.0) == 0.0);
  CHECK(cubic_bspline(0.5, 0.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(cubic_bspline(0.25, 0.0, 1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(cubic_bspline(0.3, 0.0, 1.0) == doctest::Approx(cubic_bspline(0.7, 0.0, 1.0)).epsilon(1e-14));
  for (int i = 1; i < 100; ++i) {
    const double t = 0.2 + 0.6 * i / 100.0;
    const double h = 1e-6;
    const double fd = (cubic_bspline(t + h, 0.2, 0.8) - cubic_bspline(t - h, 0.2, 0.8)) / (2.0 * h);
    CHECK(cubic_bspline_derivative(t, 0.2, 0.8) == doctest::Approx(fd).epsilon(1e-6));
  }
  // unit integral: area h for uniform knot spacing h, here h = (te - tb) / 4
  double area = 0.0;
  const int m = 4000;
  for (int i = 0; i < m; ++i) area += cubic_bspline((i + 0.5) / m, 0.0, 1.0) / m;
  CHECK(area == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("default test battery") {
  const GridSpec grid(8);
  const auto tests = default_test_battery(grid, 0.0, 1.0);
  REQUIRE(tests.size() == 12);
  for (std::size_t i = 0; i < tests.size(); ++i) {
    CHECK(l2_norm(tests[i].spatial) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(max_abs(divergence(tests[i].spatial)) <= 1e-15);
    CHECK(tests[i].t_begin == 0.0);
    CHECK(tests[i].t_end == 1.0);
    for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(inner_product(tests[i].spatial, tests[j].spatial)) <= 1e-15);
  }
}

TEST_CASE("energy identity residual") {
  const GridSpec grid(8);
  SUBCASE("shear under the mild scheme") {
    const Trajectory traj = run(shear_init(grid), params(1.0, 1e-4, 0.02, Scheme::mild_duhamel));
    const auto defects = energy_identity_residual(traj, traj.params);
    CHECK(defects.size() == traj.snapshots.size() - 1);
    for (double d : defects) CHECK(d <= 1e-10);
  }
  SUBCASE("zero field") {
    const Trajectory traj = run(zero_field(grid), params(1.0, 1e-2, 0.1));
    for (double d : energy_identity_residual(traj, traj.params)) CHECK(d == 0.0);
  }
  SUBCASE("forcing work enters the balance") {
    SolverParams p = params(1.0, 1e-4, 0.02, Scheme::mild_duhamel);
    p.forcing = shear_init(grid, 0.5);
    const Trajectory traj = run(shear_init(grid), p);
    for (double d : energy_identity_residual(traj, p)) CHECK(d <= 1e-10);
  }
  SUBCASE("Taylor-Green accumulated defect is second order") {
    const GridSpec g16(16);
    double total[2] = {0.0, 0.0};
    const double dts[2] = {2e-3, 1e-3};
    for (int i = 0; i < 2; ++i) {
      const Trajectory traj = run(taylor_green_init(g16), params(0.1, dts[i], 0.2));
      for (double d : energy_identity_residual(traj, traj.params)) total[i] += d;
    }
    MESSAGE("accumulated defect ratio " << total[0] / total[1]);
    CHECK(total[0] / total[1] == doctest::Approx(4.0).epsilon(0.1));
  }
  SUBCASE("too few snapshots") {
    const Trajectory traj = run(shear_init(grid), params(1.0, 1e-2, 0.0));
    CHECK(code_of([&] { (void)energy_identity_residual(traj, traj.params); }) == ErrorCode::TooFewSnapshots);
  }
}

TEST_CASE("weak-form residual") {
  const GridSpec grid(8);
  SUBCASE("exact shear: quadrature error only, at least second order") {
    double r[2];
    const int steps[2] = {40, 80};  // bump knots fall on snapshot times
    for (int i = 0; i < 2; ++i) {
      const Trajectory traj = exact_shear(grid, 1.0, uniform_times(0.5, steps[i]));
      r[i] = weak_form_residual(traj, {}, default_test_battery(grid, 0.0, 0.5));
    }
    MESSAGE("shear weak residuals " << r[0] << " " << r[1]);
    CHECK(r[0] <= std::pow(0.5 / 40, 2));
    CHECK(r[0] / r[1] >= 4.0 * 0.95);
  }
  SUBCASE("a test orthogonal to every active mode contributes nothing") {
    const Trajectory traj = run(shear_init(grid), params(1.0, 1e-2, 0.2, Scheme::mild_duhamel));
    SpectralField w(grid);
    w.set_mode(0, 0, 2, {Complex(std::sqrt(0.5), 0.0), 0.0, 0.0});
    CHECK(weak_form_residual(traj, {}, {{w, 0.0, 0.2}}) == 0.0);
  }
  SUBCASE("explicit pressure matches the implied one") {
    const Trajectory traj = run(taylor_green_init(grid), params(0.1, 1e-2, 0.2));
    std::vector<SpectralField> pressure;
    for (const auto& u : traj.snapshots) pressure.push_back(pressure_solve(u));
    const auto battery = default_test_battery(grid, 0.0, 0.2);
    CHECK(weak_form_residual(traj, pressure, battery) == weak_form_residual(traj, {}, battery));
    pressure.pop_back();
    CHECK(code_of([&] { (void)weak_form_residual(traj, pressure, battery); }) == ErrorCode::TimeGridMismatch);
  }
  SUBCASE("Taylor-Green residual converges at second order") {
    // coarser steps under-resolve the bump (h = 0.05) and are pre-asymptotic
    const GridSpec g16(16);
    std::vector<double> dts{2e-3, 1e-3, 5e-4}, res;
    for (double dt : dts) {
      const Trajectory traj = run(taylor_green_init(g16), params(0.1, dt, 0.2));
      // the |k| = 1 battery is orthogonal to Taylor-Green; test against fields it excites
      SpectralField tg = taylor_green_init(g16);
      SpectralField r = random_solenoidal_init(g16, 1.0, 5);
      tg *= 1.0 / l2_norm(tg);
      r *= 1.0 / l2_norm(r);
      res.push_back(weak_form_residual(traj, {}, {{tg, 0.0, 0.2}, {r, 0.0, 0.2}}));
    }
    const double slope = loglog_slope(dts, res);
    MESSAGE("TG weak residual slope " << slope);
    CHECK(std::abs(slope - 2.0) <= 0.3);
  }
  SUBCASE("invalid tests") {
    const Trajectory traj = run(shear_init(grid), params(1.0, 1e-2, 0.2));
    SpectralField compressive(grid);
    compressive.set_mode(1, 0, 0, {Complex(std::sqrt(0.5), 0.0), 0.0, 0.0});
    CHECK(code_of([&] { (void)weak_form_residual(traj, {}, {{compressive, 0.0, 0.2}}); }) ==
          ErrorCode::NonSolenoidalTest);
    const auto battery = default_test_battery(grid, 0.0, 0.5);
    CHECK(code_of([&] { (void)weak_form_residual(traj, {}, battery); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { (void)weak_form_residual(traj, {}, default_test_battery(GridSpec(16), 0.0, 0.2)); }) ==
          ErrorCode::GridMismatch);
  }
}

TEST_CASE("mild residual") {
  const GridSpec grid(8);
  const Trajectory shear = run(shear_init(grid), params(1.0, 1e-3, 0.2));
  CHECK(mild_residual(shear, shear.params) <= 1e-10);
  CHECK(mild_residual(run(shear_init(grid), params(1.0, 1e-3, 0.0)), shear.params) == 0.0);
  const Trajectory empty{shear.params, {}, "empty"};
  CHECK(code_of([&] { (void)mild_residual(empty, shear.params); }) == ErrorCode::TooFewSnapshots);

  // forcing handled through the exact phi1 weight
  SolverParams forced = params(1.0, 1e-3, 0.2, Scheme::mild_duhamel);
  forced.forcing = shear_init(grid, 0.7);
  CHECK(mild_residual(run(shear_init(grid), forced), forced) <= 1e-10);

  const GridSpec g16(16);
  std::vector<double> dts{4e-3, 2e-3, 1e-3}, res;
  for (double dt : dts) {
    const Trajectory traj = run(taylor_green_init(g16), params(0.1, dt, 0.2));
    res.push_back(mild_residual(traj, traj.params));
  }
  const double slope = loglog_slope(dts, res);
  MESSAGE("TG mild residual slope " << slope);
  CHECK(std::abs(slope - 2.0) <= 0.3);
}

TEST_CASE("strong and vorticity residuals") {
  const GridSpec grid(8);
  SUBCASE("shear: centred-difference error, second order") {
    double rs[2], rv[2];
    const double dts[2] = {2e-3, 1e-3};
    for (int i = 0; i < 2; ++i) {
      const Trajectory traj = run(shear_init(grid), params(1.0, dts[i], 0.1, Scheme::mild_duhamel));
      rs[i] = strong_residual(traj, traj.params);
      rv[i] = vorticity_residual(traj, traj.params);
    }
    CHECK(rs[1] <= 1e-6);
    CHECK(rs[0] / rs[1] == doctest::Approx(4.0).epsilon(0.01));
    CHECK(rv[0] / rv[1] == doctest::Approx(4.0).epsilon(0.01));
  }
  SUBCASE("manufactured steady state") {
    // f = -nu Lap u keeps the shear profile at rest
    SolverParams p = params(0.3, 1e-2, 0.2, Scheme::mild_duhamel);
    p.forcing = 0.3 * shear_init(grid);
    const Trajectory traj = run(shear_init(grid), p);
    CHECK(rel_diff(traj.snapshots.back(), shear_init(grid)) <= 1e-14);
    CHECK(strong_residual(traj, p) <= 1e-10);
    CHECK(vorticity_residual(traj, p) <= 1e-10);
  }
  SUBCASE("zero trajectory") {
    const Trajectory traj = run(zero_field(grid), params(1.0, 1e-2, 0.05));
    CHECK(strong_residual(traj, traj.params) == 0.0);
    CHECK(vorticity_residual(traj, traj.params) == 0.0);
  }
  SUBCASE("too few snapshots") {
    const Trajectory traj = run(shear_init(grid), params(1.0, 1e-2, 0.01));
    REQUIRE(traj.snapshots.size() == 2);
    CHECK(code_of([&] { (void)strong_residual(traj, traj.params); }) == ErrorCode::TooFewSnapshots);
    CHECK(code_of([&] { (void)vorticity_residual(traj, traj.params); }) == ErrorCode::TooFewSnapshots);
  }
  SUBCASE("nonuniform snapshot spacing") {
    const Trajectory traj = exact_shear(grid, 1.0, {0.0, 0.01, 0.015, 0.03, 0.035});
    CHECK(strong_residual(traj, traj.params) <= 1e-4);
  }
}

TEST_CASE("diagnose") {
  const GridSpec grid(16);
  SolverParams p = params(0.1, 2e-3, 0.06);
  p.cadence = 3;
  const Trajectory traj = run(taylor_green_init(grid), p);
  const auto records = diagnose(traj, {1.0, 2.0, 3.0});
  REQUIRE(records.size() == traj.snapshots.size());
  for (std::size_t m = 0; m < records.size(); ++m) {
    const auto& r = records[m];
    const SpectralField& u = traj.snapshots[m];
    CHECK(r.t == u.time());
    CHECK(r.energy == kinetic_energy(u));
    CHECK(r.enstrophy == enstrophy(u));
    CHECK(r.bkm == bkm_monitor(u));
    CHECK(r.div_defect <= 1e-12);
    CHECK(r.hs_norms.size() == 3);
    CHECK(r.hs_norms.at(2.0) == sobolev_norm(u, 2.0));
    for (double v : {r.res_weak, r.res_mild, r.res_strong}) {
      CHECK(std::isfinite(v));
      CHECK(v >= 0.0);
    }
  }
  CHECK(records[0].res_weak == 0.0);
  CHECK(records[0].res_mild == 0.0);
  CHECK(records[0].res_strong == 0.0);
  // the last row covers the whole trajectory
  const auto& last = records.back();
  CHECK(last.res_strong == doctest::Approx(strong_residual(traj, p)).epsilon(1e-12));
  CHECK(last.res_mild == doctest::Approx(mild_residual(traj, p)).epsilon(1e-12));
  CHECK(last.res_weak ==
        doctest::Approx(weak_form_residual(traj, {}, default_test_battery(grid, 0.0, p.t_end))).epsilon(1e-12));
  // and a prefix row matches the truncated trajectory
  Trajectory prefix = traj;
  prefix.snapshots.erase(prefix.snapshots.begin() + 6, prefix.snapshots.end());
  const auto& row = records[5];
  CHECK(row.res_strong == doctest::Approx(strong_residual(prefix, p)).epsilon(1e-12));
  CHECK(row.res_mild == doctest::Approx(mild_residual(prefix, p)).epsilon(1e-12));
  CHECK(row.res_weak ==
        doctest::Approx(weak_form_residual(prefix, {}, default_test_battery(grid, 0.0, prefix.snapshots.back().time())))
            .epsilon(1e-12));
}

TEST_CASE("unification and reconstruction") {
  const GridSpec grid(16);
  const WeightPartition w = WeightPartition::defaults(grid);
  SUBCASE("zero trajectories give zero output") {
    const Trajectory z = run(zero_field(grid), params(0.1, 1e-2, 0.03));
    const Reconstruction rec = unify_and_reconstruct(z, z, z, w, {0.1});
    CHECK(rec.trajectory.scheme == "unified");
    CHECK(rec.trajectory.snapshots.size() == z.snapshots.size());
    for (const auto& u : rec.trajectory.snapshots) CHECK(l2_norm(u) == 0.0);
  }
  SUBCASE("shear triple against the closed form") {
    const SpectralField u0 = shear_init(grid);
    SolverParams p = params(1.0, 1e-3, 0.05);
    p.cadence = 10;
    SolverParams pw = p;
    pw.galerkin_cutoff = 4.0;
    const Trajectory weak = run_weak_galerkin(u0, pw);
    p.scheme = Scheme::mild_duhamel;
    const Trajectory mild = run(u0, p);
    p.scheme = Scheme::strong_imex;
    const Trajectory strong = run(u0, p);
    for (double eps : {0.25, 1.0 / 16.0}) {
      const Reconstruction rec = unify_and_reconstruct(weak, mild, strong, w, {eps});
      CHECK(rec.max_parseval_defect <= 1e-12);
      for (std::size_t m = 0; m < rec.trajectory.snapshots.size(); ++m) {
        const double t = rec.trajectory.snapshots[m].time();
        CHECK(t == strong.snapshots[m].time());
        SpectralField exact = shear_init(grid, std::exp(-t));
        exact.set_time(t);
        const double operator_error = sobolev_norm(unify_snapshot(exact, exact, exact, w, {eps}) - exact, 1.0);
        CHECK(sobolev_norm(rec.trajectory.snapshots[m] - exact, 1.0) <= operator_error + 1e-10);
      }
    }
  }
  SUBCASE("mismatches") {
    const Trajectory a = run(shear_init(grid), params(1.0, 1e-2, 0.03));
    const Trajectory b = run(shear_init(grid), params(1.0, 1e-2, 0.04));
    CHECK(code_of([&] { (void)unify_and_reconstruct(a, a, b, w, {0.1}); }) == ErrorCode::TimeGridMismatch);
    SolverParams p = params(1.0, 1.1e-2, 0.03);
    const Trajectory c = run(shear_init(grid), p);
    REQUIRE(c.snapshots.size() == a.snapshots.size());
    CHECK(code_of([&] { (void)unify_and_reconstruct(a, c, a, w, {0.1}); }) == ErrorCode::TimeGridMismatch);
    const Trajectory d = run(shear_init(GridSpec(8)), params(1.0, 1e-2, 0.03));
    CHECK(code_of([&] { (void)unify_and_reconstruct(a, d, a, w, {0.1}); }) == ErrorCode::GridMismatch);
  }
}

TEST_CASE("convergence study") {
  const GridSpec grid(16);
  const std::vector<double> eps{0.25, 0.125, 0.0625, 0.03125, 0.015625};
  const SpectralField f = random_solenoidal_init(grid, 3.0, 17);
  SUBCASE("gaussian smoothing of smooth data is second order") {
    const auto table = convergence_study([&](double e) { return smooth(f, {e}); }, eps, 1.0, f);
    CHECK(table.monotone);
    CHECK_FALSE(table.exact);
    CHECK(table.errors.size() == eps.size());
    CHECK(std::abs(table.slope - 2.0) <= 0.2);
  }
  SUBCASE("bump smoothing") {
    const auto table =
        convergence_study([&](double e) { return smooth(f, {e, MollifierKind::bump}); }, eps, 1.0, f);
    MESSAGE("bump slope " << table.slope);
    CHECK(table.monotone);
    CHECK(table.slope >= 1.8);
  }
  SUBCASE("finest member as reference") {
    const auto table = convergence_study([&](double e) { return smooth(f, {e}); }, eps, 1.0);
    CHECK(table.errors.size() == eps.size() - 1);
    CHECK(table.monotone);
    CHECK(table.slope > 1.5);
  }
  SUBCASE("constant field is reproduced exactly") {
    SpectralField c(grid);
    c.set_mode(0, 0, 0, {Complex(1.0, 0.0), Complex(-2.0, 0.0), 0.0});
    const auto table = convergence_study([&](double e) { return smooth(c, {e}); }, eps, 1.0, c);
    CHECK(table.exact);
    CHECK(table.monotone);
    for (double e : table.errors) CHECK(e == 0.0);
  }
  SUBCASE("degenerate sequences") {
    auto pipeline = [&](double e) { return smooth(f, {e}); };
    CHECK(code_of([&] { (void)convergence_study(pipeline, {0.5, 0.25, 0.125}, 1.0); }) ==
          ErrorCode::DegenerateSequence);
    CHECK(code_of([&] { (void)convergence_study(pipeline, {0.5, 0.25, 0.25, 0.125}, 1.0); }) ==
          ErrorCode::DegenerateSequence);
    CHECK(code_of([&] { (void)convergence_study(pipeline, {0.5, 0.25, 0.125, 0.0}, 1.0); }) ==
          ErrorCode::DegenerateSequence);
  }
}

TEST_CASE("log-log slope") {
  std::vector<double> x{1.0, 2.0, 4.0, 8.0}, y;
  for (double v : x) y.push_back(3.0 * v * v * v);
  CHECK(loglog_slope(x, y) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(code_of([&] { (void)loglog_slope({1.0}, {1.0}); }) == ErrorCode::DegenerateSequence);
  CHECK(code_of([&] { (void)loglog_slope({1.0, 1.0}, {1.0, 2.0}); }) == ErrorCode::DegenerateSequence);
  CHECK(code_of([&] { (void)loglog_slope({1.0, 2.0}, {0.0, 2.0}); }) == ErrorCode::DegenerateSequence);
}

}  // TEST_SUITE
