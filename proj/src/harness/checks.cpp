#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>

#include "synergy/diagnostics.hpp"
#include "synergy/experiments.hpp"
#include "synergy/kernels.hpp"
#include "synergy/littlewood_paley.hpp"
#include "synergy/parallel.hpp"
#include "synergy/snapshot.hpp"
#include "synergy/spectral_ops.hpp"
#include "synergy/transform.hpp"

namespace synergy {

namespace {

constexpr int sample_count = 20;

Check at_most(std::string name, double value, double bound) { return {std::move(name), value, bound, value <= bound}; }
Check at_least(std::string name, double value, double bound) { return {std::move(name), value, bound, value >= bound}; }

std::vector<SpectralField> samples(const GridSpec& grid, double s, std::uint64_t seed, int count = sample_count) {
  std::vector<SpectralField> out;
  for (int i = 0; i < count; ++i) out.push_back(random_solenoidal_init(grid, s, seed + static_cast<std::uint64_t>(i)));
  return out;
}

// Random field with a gradient part, so projection has work to do.
SpectralField compressible_sample(const GridSpec& grid, std::uint64_t seed) {
  SpectralField u = random_solenoidal_init(grid, 1.0, seed);
  SpectralField phi = random_solenoidal_init(grid, 2.0, seed + 7919);
  for (int c = 1; c < 3; ++c) std::fill(phi.component(c).begin(), phi.component(c).end(), Complex{});
  u += gradient(phi);
  u.set_solenoidal(false);
  return u;
}

double relative(const SpectralField& a, const SpectralField& b) {
  const double scale = l2_norm(b);
  const double diff = l2_norm(a - b);
  return scale > 0.0 ? diff / scale : diff;
}

SolverParams shear_params(double nu, double dt, double t_end) {
  SolverParams p;
  p.nu = nu;
  p.dt = dt;
  p.t_end = t_end;
  p.scheme = Scheme::mild_duhamel;
  return p;
}

// (u.grad)u by direct summation over interacting pairs of dealiased modes.
SpectralField convolution_advection(const SpectralField& u) {
  const GridSpec& grid = u.grid();
  const int n = grid.n();
  const int cut = grid.dealias_cutoff();
  SpectralField out(grid);
  for (int p1 = -cut; p1 <= cut; ++p1)
    for (int p2 = -cut; p2 <= cut; ++p2)
      for (int p3 = -cut; p3 <= cut; ++p3) {
        const CVec3 up = u.mode(p1, p2, p3);
        for (int q1 = -cut; q1 <= cut; ++q1)
          for (int q2 = -cut; q2 <= cut; ++q2)
            for (int q3 = -cut; q3 <= cut; ++q3) {
              const int k1 = p1 + q1, k2 = p2 + q2, k3 = p3 + q3;
              if (std::abs(k1) > cut || std::abs(k2) > cut || std::abs(k3) > cut) continue;
              const CVec3 uq = u.mode(q1, q2, q3);
              const Complex coeff = Complex(0.0, 1.0) * (up[0] * double(q1) + up[1] * double(q2) + up[2] * double(q3));
              const std::size_t idx = grid.flat_k(k1, k2, k3);
              for (int c = 0; c < 3; ++c) out.component(c)[idx] += coeff * uq[c];
            }
      }
  (void)n;
  return out;
}

double kernel_mismatches() {
  const auto* fast = kernels::avx2_table();
  if (fast == nullptr) return 0.0;
  const auto& ref = kernels::scalar_table();
  constexpr std::size_t count = 1027;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto reals = [&] {
    std::vector<double> v(count);
    for (auto& x : v) x = dist(rng);
    return v;
  };
  auto complexes = [&] {
    std::vector<Complex> v(count);
    for (auto& x : v) x = {dist(rng), dist(rng)};
    return v;
  };
  double bad = 0.0;
  auto same = [&](const void* a, const void* b, std::size_t bytes) {
    if (std::memcmp(a, b, bytes) != 0) bad += 1.0;
  };
  const auto m = reals();
  const auto c = complexes();
  {
    auto a = c, b = c;
    ref.scale(a.data(), m.data(), count);
    fast->scale(b.data(), m.data(), count);
    same(a.data(), b.data(), count * sizeof(Complex));
  }
  {
    std::vector<Complex> a(count), b(count);
    ref.scale_into(a.data(), c.data(), m.data(), count);
    fast->scale_into(b.data(), c.data(), m.data(), count);
    same(a.data(), b.data(), count * sizeof(Complex));
  }
  {
    auto y1 = reals(), x = reals();
    auto y2 = y1;
    ref.axpy(y1.data(), 0.37, x.data(), count);
    fast->axpy(y2.data(), 0.37, x.data(), count);
    same(y1.data(), y2.data(), count * sizeof(double));
  }
  {
    auto ax = complexes(), ay = complexes(), az = complexes();
    auto bx = ax, by = ay, bz = az;
    const auto kx = reals(), ky = reals(), kz = reals(), inv = reals();
    ref.leray(ax.data(), ay.data(), az.data(), kx.data(), ky.data(), kz.data(), inv.data(), count);
    fast->leray(bx.data(), by.data(), bz.data(), kx.data(), ky.data(), kz.data(), inv.data(), count);
    same(ax.data(), bx.data(), count * sizeof(Complex));
    same(ay.data(), by.data(), count * sizeof(Complex));
    same(az.data(), bz.data(), count * sizeof(Complex));
  }
  {
    const double a = ref.weighted_norm2(c.data(), m.data(), count);
    const double b = fast->weighted_norm2(c.data(), m.data(), count);
    same(&a, &b, sizeof a);
    const double a2 = ref.weighted_norm2(c.data(), nullptr, count);
    const double b2 = fast->weighted_norm2(c.data(), nullptr, count);
    same(&a2, &b2, sizeof a2);
    const auto x = reals();
    const double d1 = ref.dot(x.data(), m.data(), count);
    const double d2 = fast->dot(x.data(), m.data(), count);
    same(&d1, &d2, sizeof d1);
  }
  {
    std::vector<std::vector<double>> u(3), g(9), o1(3, std::vector<double>(count)), o2(3, std::vector<double>(count));
    for (auto& v : u) v = reals();
    for (auto& v : g) v = reals();
    const double* up[3] = {u[0].data(), u[1].data(), u[2].data()};
    const double* gp[9];
    for (int i = 0; i < 9; ++i) gp[i] = g[i].data();
    double* p1[3] = {o1[0].data(), o1[1].data(), o1[2].data()};
    double* p2[3] = {o2[0].data(), o2[1].data(), o2[2].data()};
    ref.advect(p1, up, gp, count);
    fast->advect(p2, up, gp, count);
    for (int i = 0; i < 3; ++i) same(o1[i].data(), o2[i].data(), count * sizeof(double));
    const double a = ref.max_norm2(u[0].data(), u[1].data(), u[2].data(), count);
    const double b = fast->max_norm2(u[0].data(), u[1].data(), u[2].data(), count);
    same(&a, &b, sizeof a);
  }
  return bad;
}

using CheckFn = std::function<std::vector<Check>()>;

}  // namespace

std::vector<Check> verification_checks(const ExperimentConfig& cfg) {
  const GridSpec grid(cfg.n);
  const std::uint64_t seed = cfg.solver.seed;
  const std::vector<double> rate_eps{0.25, 0.125, 0.0625, 0.03125};

  std::vector<CheckFn> groups;

  groups.push_back([=] {
    double parseval = 0.0, roundtrip = 0.0, hermitian = 0.0;
    for (const auto& u : samples(grid, 1.0, seed)) {
      parseval = std::max(parseval, parseval_defect(u));
      roundtrip = std::max(roundtrip, relative(forward_transform(inverse_transform(u)), u));
      const SpectralField nl = nonlinear_term(u);
      hermitian = std::max(hermitian, hermitian_defect(nl) / std::max(max_abs(nl), 1e-300));
    }
    return std::vector<Check>{at_most("transform_parseval_defect", parseval, 1e-12),
                              at_most("transform_roundtrip_error", roundtrip, 1e-13),
                              at_most("nonlinear_hermitian_defect", hermitian, 1e-12)};
  });

  groups.push_back([=] {
    double idem = 0.0, div = 0.0;
    for (int i = 0; i < sample_count; ++i) {
      const SpectralField f = compressible_sample(grid, seed + 100 + static_cast<std::uint64_t>(i));
      SpectralField p = leray_project(f);
      SpectralField pp = leray_project(p);
      idem = std::max(idem, relative(pp, p));
      p.set_solenoidal(false);
      div = std::max(div, divergence_defect(p));
    }
    return std::vector<Check>{at_most("leray_idempotence_error", idem, 1e-14),
                              at_most("leray_divergence_defect", div, 1e-13)};
  });

  groups.push_back([=] {
    double smooth_ratio = 0.0, reg_ratio = 0.0;
    for (const auto& f : samples(grid, 1.0, seed + 200)) {
      for (double s : {0.0, 1.0, 2.0, 3.0}) {
        const double base = sobolev_norm(f, s);
        for (auto kind : {MollifierKind::gaussian, MollifierKind::bump}) {
          const MollifierSpec spec{0.2, kind};
          smooth_ratio = std::max(smooth_ratio, sobolev_norm(smooth(f, spec), s) / base);
          reg_ratio = std::max(reg_ratio, sobolev_norm(regularize(f, spec), s) / base);
        }
      }
    }
    return std::vector<Check>{at_most("smoothing_contraction_ratio", smooth_ratio, 1.0),
                              at_most("regularization_contraction_ratio", reg_ratio, 1.0)};
  });

  groups.push_back([=] {
    const SpectralField f = random_solenoidal_init(grid, 3.0, seed + 300);
    auto slope_for = [&](MollifierKind kind) {
      std::vector<double> errors;
      for (double eps : rate_eps) errors.push_back(sobolev_norm(smooth(f, {eps, kind}) - f, 1.0));
      return loglog_slope(rate_eps, errors);
    };
    return std::vector<Check>{at_most("gaussian_rate_slope_error", std::abs(slope_for(MollifierKind::gaussian) - 2.0), 0.2),
                              at_least("bump_rate_slope", slope_for(MollifierKind::bump), 1.8)};
  });

  groups.push_back([=] {
    const WeightPartition w = cfg.weights();
    double defect = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      const BandWeights b = weight_eval(w, 0.01 * i);
      defect = std::max(defect, std::abs(b.weak + b.mild + b.strong - 1.0));
    }
    return std::vector<Check>{at_most("band_partition_of_unity_defect", defect, 1e-15)};
  });

  groups.push_back([=] {
    const DyadicPartition part(grid);
    double reassembly = 0.0, lo = 1.0, hi = 0.0, bern = 0.0;
    for (const auto& u : samples(grid, 1.0, seed + 400)) {
      SpectralField sum(grid);
      for (int j = part.jmin(); j <= part.jmax(); ++j) sum += dyadic_block(u, part, j);
      reassembly = std::max(reassembly, relative(sum, u));
      const double ratio = almost_orthogonality_ratio(u, part);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      for (int j = 0; j <= part.jmax(); ++j) {
        const SpectralField block = dyadic_block(u, part, j);
        if (l2_norm(block) == 0.0) continue;
        for (int axis = 0; axis < 3; ++axis) {
          std::array<int, 3> alpha{0, 0, 0};
          alpha[axis] = 1;
          bern = std::max(bern, bernstein_check(block, part, j, alpha, LpExponent::two, LpExponent::two).ratio());
        }
      }
    }
    return std::vector<Check>{at_most("lp_reassembly_defect", reassembly, 1e-12),
                              at_least("lp_almost_orthogonality_min", lo, 0.5),
                              at_most("lp_almost_orthogonality_max", hi, 1.0),
                              at_most("bernstein_l2_gradient_ratio", bern, 2.0)};
  });

  groups.push_back([=] {
    const GridSpec small(16);
    const DyadicPartition part(small);
    double worst = 0.0;
    for (const auto& u : samples(small, 1.0, seed + 500, 5)) {
      const Paraproduct pp = paraproduct_decompose(u, part);
      worst = std::max(worst, relative(pp.low_high + pp.high_low + pp.resonant, advection(u, u)));
    }
    return std::vector<Check>{at_most("paraproduct_reassembly_error", worst, 1e-10)};
  });

  groups.push_back([=] {
    const GridSpec small(8);
    double worst = 0.0;
    for (const auto& raw : samples(small, 1.0, seed + 600, 3)) {
      SpectralField u = leray_project(dealias(raw));
      u.remove_mean();
      SpectralField oracle = leray_project(convolution_advection(u));
      oracle.remove_mean();
      worst = std::max(worst, relative(nonlinear_term(u), oracle));
    }
    return std::vector<Check>{at_most("nonlinear_convolution_error", worst, 1e-10)};
  });

  groups.push_back([=] {
    const GridSpec small(8);
    const SolverParams p = shear_params(1.0, 1e-3, 0.1);
    const Trajectory traj = run(shear_init(small), p);
    const double ratio = kinetic_energy(traj.snapshots.back()) / kinetic_energy(traj.snapshots.front());
    const auto battery = default_test_battery(small, 0.0, p.t_end);
    const auto defects = energy_identity_residual(traj, p);
    return std::vector<Check>{
        at_most("shear_energy_decay_error", std::abs(ratio - std::exp(-2.0 * p.nu * p.t_end)), 1e-6),
        at_most("shear_mild_residual", mild_residual(traj, p), 1e-8),
        at_most("shear_strong_residual", strong_residual(traj, p), 1e-6),
        at_most("shear_vorticity_residual", vorticity_residual(traj, p), 1e-6),
        at_most("shear_weak_residual", weak_form_residual(traj, {}, battery), 1e-6),
        at_most("shear_energy_identity_defect", *std::max_element(defects.begin(), defects.end()), 1e-9)};
  });

  groups.push_back([=] {
    const SpectralField u0 = taylor_green_init(grid);
    auto accumulated = [&](double dt) {
      SolverParams p;
      p.nu = 0.1;
      p.dt = dt;
      p.t_end = 0.1;
      const auto d = energy_identity_residual(run(u0, p), p);
      double sum = 0.0;
      for (double x : d) sum += x;
      return sum;
    };
    const double ratio = accumulated(2e-3) / accumulated(1e-3);
    return std::vector<Check>{at_most("energy_identity_order_ratio_error", std::abs(ratio - 4.0), 0.5)};
  });

  groups.push_back([=] {
    const SpectralField u0 = taylor_green_init(grid);
    auto gap = [&](double dt) {
      SolverParams p;
      p.nu = 0.1;
      p.dt = dt;
      p.t_end = 0.1;
      p.scheme = Scheme::mild_duhamel;
      const Trajectory mild = run(u0, p);
      p.scheme = Scheme::strong_imex;
      const Trajectory strong = run(u0, p);
      double worst = 0.0;
      for (std::size_t m = 0; m < mild.snapshots.size(); ++m) {
        worst = std::max(worst, sobolev_norm(mild.snapshots[m] - strong.snapshots[m], 1.0));
      }
      return worst;
    };
    return std::vector<Check>{at_least("scheme_coincidence_halving_ratio", gap(2e-3) / gap(1e-3), 3.0)};
  });

  groups.push_back([=] {
    const SpectralField u0 = taylor_green_init(grid);
    SolverParams p;
    p.nu = 0.1;
    p.dt = 1e-3;
    p.t_end = 0.1;
    const SpectralField reference = run(u0, p).snapshots.back();
    double worst_increase = -std::numeric_limits<double>::infinity();
    double prev = std::numeric_limits<double>::infinity();
    for (int r : {1, 2, 3}) {
      const double cutoff = std::pow(r * cfg.n / 8.0, 2);
      p.galerkin_cutoff = cutoff;
      const double g = sobolev_norm(run_weak_galerkin(u0, p).snapshots.back() - reference, 1.0);
      if (std::isfinite(prev)) worst_increase = std::max(worst_increase, g - prev);
      prev = g;
    }
    return std::vector<Check>{{"galerkin_gap_max_increase", worst_increase, 0.0, worst_increase < 0.0}};
  });

  groups.push_back([=] {
    double worst = 0.0;
    for (const auto& u : samples(grid, 1.0, seed + 700)) {
      const SpectralField adv = advection(u, u);
      const double ratio = l2_norm(gradient(pressure_from_divergence(adv))) / l2_norm(adv);
      worst = std::max(worst, ratio);
    }
    return std::vector<Check>{at_most("pressure_multiplier_ratio", worst, 1.0 + 1e-12)};
  });

  groups.push_back([=] {
    const double lifespan = lifespan_lower_bound(1.0, 0.0, 1.0, 1.0);
    double c_s = 0.0;
    for (const auto& u : samples(grid, 2.0, seed + 800)) c_s = std::max(c_s, commutator_bound_ratio(u, 2.0));
    const SpectralField u0 = taylor_green_init(grid);
    SolverParams p;
    p.nu = 0.1;
    p.dt = 1e-3;
    p.t_end = lifespan_lower_bound(sobolev_norm(u0, 2.0), 0.0, p.nu, c_s);
    p.cadence = 10;
    const Trajectory traj = run(u0, p);
    double growth = 0.0;
    for (const auto& u : traj.snapshots) growth = std::max(growth, sobolev_norm(u, 2.0) / sobolev_norm(u0, 2.0));
    return std::vector<Check>{at_most("lifespan_formula_error", std::abs(lifespan - 0.25), 0.0),
                              at_most("taylor_green_h2_growth", growth, 2.0)};
  });

  groups.push_back([=] {
    const SpectralField u0 = shear_init(grid);
    SolverParams p = shear_params(0.1, 1e-3, 0.05);
    p.cadence = 10;
    const Trajectory s = run(u0, p);
    double prev = std::numeric_limits<double>::infinity();
    double worst_increase = -std::numeric_limits<double>::infinity();
    double parseval = 0.0;
    for (double eps : cfg.eps_list) {
      const Reconstruction rec = unify_and_reconstruct(s, s, s, cfg.weights(), {eps, cfg.mollifier}, cfg.variant);
      parseval = std::max(parseval, rec.max_parseval_defect);
      double err = 0.0;
      for (std::size_t m = 0; m < s.snapshots.size(); ++m) {
        err = std::max(err, sobolev_norm(rec.trajectory.snapshots[m] - s.snapshots[m], 1.0));
      }
      if (std::isfinite(prev)) worst_increase = std::max(worst_increase, err - prev);
      prev = err;
    }
    return std::vector<Check>{{"unified_error_max_increase", worst_increase, 0.0, worst_increase <= 0.0},
                              at_most("unified_parseval_defect", parseval, 1e-12)};
  });

  groups.push_back([=] {
    const SpectralField u = random_solenoidal_init(grid, 1.0, seed + 900);
    std::stringstream buffer;
    write_snapshot(buffer, u, cfg.solver.nu);
    const Snapshot back = read_snapshot(buffer);
    const double mismatch = back.field.identical(u) && back.nu == cfg.solver.nu ? 0.0 : 1.0;
    return std::vector<Check>{at_most("snapshot_roundtrip_mismatch", mismatch, 0.0),
                              at_most("simd_kernel_mismatches", kernel_mismatches(), 0.0)};
  });

  std::vector<std::vector<Check>> results(groups.size());
  parallel_for(groups.size(), [&](std::size_t i) { results[i] = groups[i](); });
  std::vector<Check> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace synergy
