#include <doctest.h>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "oracles.hpp"
#include "synergy/diagnostics.hpp"
#include "synergy/error.hpp"
#include "synergy/littlewood_paley.hpp"
#include "synergy/ns_solvers.hpp"
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

double empirical_c2() {
  double c = 0.0;
  for (unsigned seed = 0; seed < 200; ++seed) {
    c = std::max(c, commutator_bound_ratio(random_solenoidal_init(GridSpec(16), 2.0, seed), 2.0));
  }
  return c;
}

}  // namespace

TEST_SUITE("ns_solvers") {

TEST_CASE("initial data") {
  const GridSpec grid(16);
  const SpectralField tg = taylor_green_init(grid);
  CHECK(kinetic_energy(tg) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(max_abs(divergence(tg)) <= 1e-13);
  const auto sparse = oracle::to_sparse(tg, 1e-14);
  CHECK(sparse.size() == 8);
  for (const auto& [k, v] : sparse) {
    CHECK(std::abs(k[0]) == 1);
    CHECK(std::abs(k[1]) == 1);
    CHECK(std::abs(k[2]) == 1);
  }
  // point values against the closed form
  const std::array<double, 3> x{0.3, 1.1, 2.5};
  const auto v = oracle::synthesize(tg, x);
  CHECK(v[0] == doctest::Approx(std::sin(x[0]) * std::cos(x[1]) * std::cos(x[2])).epsilon(1e-13));
  CHECK(v[1] == doctest::Approx(-std::cos(x[0]) * std::sin(x[1]) * std::cos(x[2])).epsilon(1e-13));
  CHECK(std::abs(v[2]) <= 1e-15);

  const SpectralField shear = shear_init(grid);
  CHECK(kinetic_energy(shear) == doctest::Approx(0.25).epsilon(1e-14));

  for (double s : {0.5, 1.0, 2.0}) {
    const SpectralField r = random_solenoidal_init(grid, s, 42);
    CHECK(std::abs(sobolev_norm(r, s) - 1.0) <= 1e-12);
    CHECK(max_abs(divergence(r)) <= 1e-12);
    CHECK(r.identical(random_solenoidal_init(grid, s, 42)));
    CHECK_FALSE(r.identical(random_solenoidal_init(grid, s, 43)));
    CHECK(r.mode(0, 0, 0)[0] == Complex(0.0, 0.0));
  }
}

TEST_CASE("strong step: shear decay and zero field") {
  const GridSpec grid(8);
  const SpectralField u0 = shear_init(grid);
  for (double dt : {1e-2, 1e-3}) {
    SolverParams p = params(1.0, dt, 0.0);
    SpectralField u = u0;
    const int m = 20;
    for (int i = 0; i < m; ++i) u = step_strong(u, p);
    const Complex expected = std::exp(-m * dt) * u0.mode(1, 0, 0)[1];
    CHECK(std::abs(u.mode(1, 0, 0)[1] - expected) <= dt * dt * std::abs(expected));
    CHECK(std::abs(u.mode(-1, 0, 0)[1] - std::conj(expected)) <= dt * dt * std::abs(expected));
  }
  SpectralField zero(grid);
  zero.set_solenoidal(true);
  const SolverParams p = params(0.3, 1e-2, 0.0);
  CHECK(l2_norm(step_strong(zero, p)) == 0.0);
  CHECK(l2_norm(step_mild(zero, p)) == 0.0);
}

TEST_CASE("strong step matches the sparse convolution oracle") {
  const GridSpec grid(16);
  const SpectralField u0 = taylor_green_init(grid);
  const SolverParams p = params(0.1, 1e-3, 0.0);
  const SpectralField lib = step_strong(u0, p);
  const SpectralField ref = oracle::to_dense(oracle::heun_step(oracle::to_sparse(u0, 1e-15), 16, 0.1, 1e-3), grid);
  CHECK(rel_diff(lib, ref) <= 1e-9);
  // a second step from a richer spectrum
  const SpectralField lib2 = step_strong(lib, p);
  const SpectralField ref2 = oracle::to_dense(oracle::heun_step(oracle::to_sparse(ref, 0.0), 16, 0.1, 1e-3), grid);
  CHECK(rel_diff(lib2, ref2) <= 1e-9);
}

TEST_CASE("mild step is exact on the shear datum") {
  const GridSpec grid(8);
  const SpectralField u0 = shear_init(grid);
  for (double dt : {5e-2, 1e-2, 1e-3}) {
    SpectralField u = u0;
    for (int i = 0; i < 4; ++i) u = step_mild(u, params(1.0, dt, 0.0));
    const Complex expected = std::exp(-4.0 * dt) * u0.mode(1, 0, 0)[1];
    CHECK(std::abs(u.mode(1, 0, 0)[1] - expected) <= 1e-14 * std::abs(u0.mode(1, 0, 0)[1]));
  }
}

TEST_CASE("mild and strong agree at second order") {
  const GridSpec grid(16);
  const SpectralField u0 = taylor_green_init(grid);
  std::vector<double> dts{4e-3, 2e-3, 1e-3}, gaps;
  for (double dt : dts) {
    const auto strong = run(u0, params(0.1, dt, 0.2));
    const auto mild = run(u0, params(0.1, dt, 0.2, Scheme::mild_duhamel));
    gaps.push_back(sobolev_norm(strong.snapshots.back() - mild.snapshots.back(), 1.0));
  }
  const double slope = loglog_slope(dts, gaps);
  MESSAGE("mild-strong gap slope " << slope);
  CHECK(std::abs(slope - 2.0) <= 0.3);
}

TEST_CASE("run: trajectory contract") {
  const GridSpec grid(16);
  const SpectralField u0 = random_solenoidal_init(grid, 1.0, 9);
  SolverParams p = params(0.1, 1e-3, 0.0);
  const Trajectory single = run(u0, p);
  CHECK(single.snapshots.size() == 1);
  CHECK(single.snapshots[0].time() == 0.0);

  p.t_end = 0.02;
  p.cadence = 3;
  const Trajectory a = run(u0, p);
  const Trajectory b = run(u0, p);
  CHECK(a.scheme == "strong-imex");
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  CHECK(a.snapshots.size() == 8);  // t = 0, 6 cadence points, final
  for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
    CHECK(a.snapshots[i].identical(b.snapshots[i]));
    CHECK(max_abs(divergence(a.snapshots[i])) <= 1e-12);
    CHECK(a.snapshots[i].mode(0, 0, 0)[0] == Complex(0.0, 0.0));
    if (i > 0) CHECK(a.snapshots[i].time() > a.snapshots[i - 1].time());
  }
  CHECK(a.snapshots.back().time() == 0.02);

  // a horizon that is not a multiple of dt ends exactly on t_end
  p.t_end = 0.0105;
  p.cadence = 1;
  CHECK(run(u0, p).snapshots.back().time() == 0.0105);
}

TEST_CASE("shear energy decays as exp(-2t) under the mild scheme") {
  const GridSpec grid(8);
  SolverParams p = params(1.0, 1e-4, 1.0, Scheme::mild_duhamel);
  p.cadence = 10000;
  const Trajectory traj = run(shear_init(grid), p);
  REQUIRE(traj.snapshots.size() == 2);
  const double ratio = kinetic_energy(traj.snapshots.back()) / kinetic_energy(traj.snapshots.front());
  CHECK(std::abs(ratio - std::exp(-2.0)) <= 1e-6);
}

TEST_CASE("inviscid energy conservation") {
  const GridSpec grid(32);
  SolverParams p = params(0.0, 1e-4, 0.1);
  p.cadence = 1000;
  const SpectralField u0 = taylor_green_init(grid);
  const Trajectory traj = run(u0, p);
  const double e0 = kinetic_energy(u0);
  CHECK(std::abs(kinetic_energy(traj.snapshots.back()) - e0) / e0 <= 1e-6);
}

TEST_CASE("Galerkin scheme") {
  SUBCASE("full resolution equals the strong scheme bitwise") {
    const GridSpec grid(16);
    const SpectralField u0 = random_solenoidal_init(grid, 1.0, 4);
    SolverParams p = params(0.1, 1e-3, 0.01);
    const Trajectory strong = run(u0, p);
    p.galerkin_cutoff = grid.max_k2();
    const Trajectory weak = run_weak_galerkin(u0, p);
    CHECK(weak.scheme == "weak-galerkin");
    REQUIRE(weak.snapshots.size() == strong.snapshots.size());
    for (std::size_t i = 0; i < weak.snapshots.size(); ++i) CHECK(weak.snapshots[i].identical(strong.snapshots[i]));
  }
  SUBCASE("shear decay with the smallest cutoff") {
    const GridSpec grid(8);
    SolverParams p = params(1.0, 1e-3, 0.1);
    p.galerkin_cutoff = 1.0;
    const SpectralField u0 = shear_init(grid);
    const Trajectory weak = run_weak_galerkin(u0, p);
    const Trajectory strong = run(u0, params(1.0, 1e-3, 0.1));
    CHECK(weak.snapshots.back().identical(strong.snapshots.back()));
    CHECK(std::abs(weak.snapshots.back().mode(1, 0, 0)[1] - std::exp(-0.1) * u0.mode(1, 0, 0)[1]) <= 1e-6);
  }
  SUBCASE("gap to full resolution shrinks as the cutoff grows") {
    const GridSpec grid(32);
    const SpectralField u0 = taylor_green_init(grid);
    SolverParams p = params(0.1, 1e-3, 0.2);
    p.cadence = 200;
    const SpectralField full = run(u0, p).snapshots.back();
    double prev = std::numeric_limits<double>::infinity();
    for (double cutoff : {16.0, 64.0, 144.0}) {
      p.galerkin_cutoff = cutoff;
      const double gap = l2_norm(run_weak_galerkin(u0, p).snapshots.back() - full);
      MESSAGE("cutoff " << cutoff << " gap " << gap);
      CHECK(gap < prev);
      prev = gap;
    }
  }
  SUBCASE("cutoff errors") {
    const GridSpec grid(8);
    SolverParams p = params(0.1, 1e-3, 0.01);
    p.galerkin_cutoff = 0.5;
    CHECK(code_of([&] { (void)run_weak_galerkin(shear_init(grid), p); }) == ErrorCode::BadCutoff);
    p.galerkin_cutoff = grid.max_k2() + 1.0;
    CHECK(code_of([&] { (void)run_weak_galerkin(shear_init(grid), p); }) == ErrorCode::BadCutoff);
    CHECK(code_of([&] { (void)galerkin_truncate(shear_init(grid), 0.0); }) == ErrorCode::BadCutoff);
  }
  SUBCASE("truncation keeps exactly the modes inside the ball") {
    const GridSpec grid(16);
    const SpectralField u = random_solenoidal_init(grid, 0.0, 8);
    const auto kept = oracle::to_sparse(galerkin_truncate(u, 10.0));
    const auto all = oracle::to_sparse(u);
    for (const auto& [k, v] : all) {
      const bool inside = k[0] * k[0] + k[1] * k[1] + k[2] * k[2] <= 10;
      CHECK(kept.contains(k) == inside);
    }
  }
}

TEST_CASE("stability gates") {
  const GridSpec grid(16);
  CHECK_NOTHROW(check_cfl(grid, 0.5 / 16.0, 1.0));
  CHECK(code_of([&] { check_cfl(grid, 0.04, 1.0); }) == ErrorCode::CflViolation);
  CHECK(code_of([&] { (void)step_strong(taylor_green_init(grid), params(0.1, 0.5, 0.0)); }) ==
        ErrorCode::CflViolation);
  CHECK(code_of([&] { (void)run(taylor_green_init(grid), params(0.1, 0.5, 1.0, Scheme::mild_duhamel)); }) ==
        ErrorCode::CflViolation);
  CHECK(code_of([&] { (void)run(taylor_green_init(grid), params(0.1, -1.0, 1.0)); }) == ErrorCode::RangeError);

  // a non-finite state trips the blow-up guard
  SpectralField bad = shear_init(grid);
  bad.set_mode(2, 0, 0, {0.0, Complex(std::numeric_limits<double>::quiet_NaN(), 0.0), 0.0});
  bad.set_solenoidal(true);
  CHECK(code_of([&] { (void)run(bad, params(0.1, 1e-3, 0.1)); }) == ErrorCode::NumericalAbort);
}

TEST_CASE("forcing enters as a steady source") {
  const GridSpec grid(8);
  // u0 = 0, f = (sin x1) e2, nu = 1: u(t) = (1 - e^-t) f exactly
  SolverParams p = params(1.0, 1e-3, 0.5, Scheme::mild_duhamel);
  p.forcing = shear_init(grid);
  SpectralField zero(grid);
  zero.set_solenoidal(true);
  const SpectralField u = run(zero, p).snapshots.back();
  CHECK(std::abs(u.mode(1, 0, 0)[1] - (1.0 - std::exp(-0.5)) * p.forcing->mode(1, 0, 0)[1]) <= 1e-14);
  p.scheme = Scheme::strong_imex;
  const SpectralField s = run(zero, p).snapshots.back();
  CHECK(std::abs(s.mode(1, 0, 0)[1] - u.mode(1, 0, 0)[1]) <= 1e-6);
}

TEST_CASE("pressure") {
  const GridSpec grid(16);
  CHECK(l2_norm(pressure_solve(shear_init(grid))) == 0.0);

  SpectralField force(grid);
  force.set_mode(0, 1, 0, {Complex(0.0, -0.5), 0.0, 0.0});  // (sin x2) e1
  CHECK(l2_norm(pressure_from_divergence(force)) == 0.0);

  // F = grad(cos x1) = -(sin x1) e1: div F = -cos x1, so -Lap p = -cos x1 gives p = -cos x1
  SpectralField grad_cos(grid);
  grad_cos.set_mode(1, 0, 0, {Complex(0.0, 0.5), 0.0, 0.0});
  const SpectralField p = pressure_from_divergence(grad_cos);
  CHECK(std::abs(p.mode(1, 0, 0)[0] - Complex(-0.5, 0.0)) <= 1e-15);

  for (unsigned seed = 0; seed < 100; ++seed) {
    const SpectralField u = random_solenoidal_init(grid, 1.0, 300 + seed);
    const SpectralField adv = advection(u, u);
    CHECK(l2_norm(gradient(pressure_solve(u))) <= l2_norm(adv) * (1.0 + 1e-12));
  }
  SpectralField g = gradient(random_solenoidal_init(grid, 1.0, 1));
  g.set_solenoidal(false);
  CHECK(code_of([&] { (void)pressure_solve(g); }) == ErrorCode::NotSolenoidal);
}

TEST_CASE("lifespan bound") {
  CHECK(lifespan_lower_bound(1.0, 0.0, 1.0, 1.0) == 0.25);
  CHECK(lifespan_lower_bound(2.0, 0.0, 1.0, 1.0) == 0.0625);
  CHECK(lifespan_lower_bound(0.0, 0.0, 1.0, 1.0) == std::numeric_limits<double>::infinity());
  CHECK(lifespan_lower_bound(1.0, 1.0, 1.0, 1.0) == 0.125);
  CHECK_THROWS_AS(lifespan_lower_bound(-1.0, 0.0, 1.0, 1.0), Error);

  const GridSpec grid(32);
  const SpectralField u0 = taylor_green_init(grid);
  const double c_s = empirical_c2();
  SolverParams p = params(0.1, 1e-3, lifespan_lower_bound(sobolev_norm(u0, 2.0), 0.0, 0.1, c_s));
  MESSAGE("c_hat " << c_s << ", T0 " << p.t_end);
  CHECK(p.t_end > 0.0);
  for (const auto& u : run(u0, p).snapshots) CHECK(sobolev_norm(u, 2.0) <= 2.0 * sobolev_norm(u0, 2.0));
}

}  // TEST_SUITE
