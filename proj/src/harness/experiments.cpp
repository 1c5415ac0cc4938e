#include "synergy/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

#include "synergy/diagnostics.hpp"
#include "synergy/littlewood_paley.hpp"
#include "synergy/spectral_ops.hpp"

namespace synergy {

SpectralField initial_field(const ExperimentConfig& cfg) {
  const GridSpec grid(cfg.n);
  switch (cfg.init) {
    case InitialData::taylor_green: return taylor_green_init(grid);
    case InitialData::shear: return shear_init(grid);
    case InitialData::random: return random_solenoidal_init(grid, cfg.init_s, cfg.solver.seed);
  }
  return taylor_green_init(grid);
}

namespace {

// Trajectory artifacts shared by every experiment.
Trajectory write_base_run(const ExperimentConfig& cfg, std::ostream& log) {
  const Trajectory traj = run(initial_field(cfg), cfg.solver);
  std::set<double> s_set(cfg.s_list.begin(), cfg.s_list.end());
  s_set.insert({1.0, 2.0, 3.0});
  const auto records = diagnose(traj, std::vector<double>(s_set.begin(), s_set.end()));
  std::vector<std::string> files = write_snapshots(cfg.out_dir / "snapshots", traj);
  for (auto& f : files) f = "snapshots/" + f;
  write_manifest(cfg.out_dir / "manifest.txt", traj, files);
  write_diagnostics_csv(cfg.out_dir / "diagnostics.csv", records);
  write_plot_script(cfg.out_dir / "plot.gp", "diagnostics.csv");
  log << "run: " << traj.scheme << ", n=" << cfg.n << ", " << traj.snapshots.size() << " snapshots, E(T)="
      << format_real(records.back().energy) << '\n';
  return traj;
}

int report_checks(const ExperimentConfig& cfg, const std::vector<Check>& checks, std::ostream& log) {
  write_summary_json(cfg.out_dir / "summary.json", checks);
  int failed = 0;
  for (const auto& c : checks) {
    log << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << format_real(c.value)
        << " bound=" << format_real(c.bound) << '\n';
    if (!c.pass) ++failed;
  }
  log << checks.size() - failed << "/" << checks.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

// Reference at the times of `traj`: the exact decay for shear data, else `traj` itself.
std::vector<SpectralField> reference_states(const ExperimentConfig& cfg, const Trajectory& traj) {
  std::vector<SpectralField> ref;
  for (const auto& u : traj.snapshots) {
    if (cfg.init == InitialData::shear && !cfg.solver.forcing) {
      SpectralField exact = heat_semigroup(traj.snapshots.front(), cfg.solver.nu, u.time());
      exact.set_time(u.time());
      ref.push_back(std::move(exact));
    } else {
      ref.push_back(u);
    }
  }
  return ref;
}

int unify_experiment(const ExperimentConfig& cfg, const Trajectory& base, std::ostream& log) {
  const SpectralField u0 = initial_field(cfg);
  SolverParams p = cfg.solver;
  p.scheme = Scheme::strong_imex;
  const Trajectory strong = cfg.solver.scheme == Scheme::strong_imex ? base : run(u0, p);
  p.scheme = Scheme::weak_galerkin;
  const Trajectory weak = run(u0, p);
  p.scheme = Scheme::mild_duhamel;
  const Trajectory mild = run(u0, p);
  const auto ref = reference_states(cfg, strong);

  std::vector<std::vector<double>> rows;
  double prev = std::numeric_limits<double>::infinity();
  double worst_increase = -std::numeric_limits<double>::infinity();
  double parseval = 0.0;
  for (double eps : cfg.eps_list) {
    const Reconstruction rec = unify_and_reconstruct(weak, mild, strong, cfg.weights(), {eps, cfg.mollifier}, cfg.variant);
    double err = 0.0;
    for (std::size_t m = 0; m < ref.size(); ++m) {
      err = std::max(err, sobolev_norm(rec.trajectory.snapshots[m] - ref[m], 1.0));
    }
    rows.push_back({eps, err, rec.max_parseval_defect});
    parseval = std::max(parseval, rec.max_parseval_defect);
    if (std::isfinite(prev)) worst_increase = std::max(worst_increase, err - prev);
    prev = err;
  }
  write_table_csv(cfg.out_dir / "unify.csv", {"eps", "error_h1", "parseval_defect"}, rows);
  std::vector<Check> checks{{"unified_error_max_increase", worst_increase, 0.0, !(worst_increase > 0.0)},
                            {"unified_parseval_defect", parseval, 1e-12, parseval <= 1e-12}};
  return report_checks(cfg, checks, log);
}

int convergence_experiment(const ExperimentConfig& cfg, const Trajectory& strong, std::ostream& log) {
  const SpectralField f = initial_field(cfg);
  const double s = cfg.s_list.front();
  const ConvergenceTable smoothing = convergence_study(
      [&](double eps) { return smooth(f, {eps, cfg.mollifier}); }, cfg.eps_list, s, f);
  const SpectralField& last = strong.snapshots.back();
  const ConvergenceTable pipeline = convergence_study(
      [&](double eps) { return unify_snapshot(last, last, last, cfg.weights(), {eps, cfg.mollifier}, cfg.variant); },
      cfg.eps_list, s);

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < smoothing.eps.size(); ++i) {
    const double pipe = i < pipeline.errors.size() ? pipeline.errors[i] : std::nan("");
    rows.push_back({smoothing.eps[i], smoothing.errors[i], pipe});
  }
  write_table_csv(cfg.out_dir / "convergence.csv", {"eps", "smoothing_error", "pipeline_error"}, rows);

  std::vector<Check> checks;
  checks.push_back({"smoothing_monotone", smoothing.monotone ? 1.0 : 0.0, 1.0, smoothing.monotone});
  checks.push_back({"pipeline_monotone", pipeline.monotone ? 1.0 : 0.0, 1.0, pipeline.monotone});
  if (!smoothing.exact) {
    if (cfg.mollifier == MollifierKind::gaussian) {
      const double err = std::abs(smoothing.slope - 2.0);
      checks.push_back({"smoothing_slope_error", err, 0.2, err <= 0.2});
    } else {
      checks.push_back({"smoothing_slope", smoothing.slope, 1.8, smoothing.slope >= 1.8});
    }
  }
  log << "smoothing slope " << format_real(smoothing.slope) << ", pipeline slope " << format_real(pipeline.slope)
      << '\n';
  return report_checks(cfg, checks, log);
}

int blocks_experiment(const ExperimentConfig& cfg, const Trajectory& traj, std::ostream& log) {
  const GridSpec grid(cfg.n);
  const DyadicPartition part(grid);
  const auto first = block_energies(traj.snapshots.front(), part);
  const auto last = block_energies(traj.snapshots.back(), part);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < first.size(); ++i) rows.push_back({static_cast<double>(i) - 1.0, first[i], last[i]});
  write_table_csv(cfg.out_dir / "blocks.csv", {"j", "energy_initial", "energy_final"}, rows);

  std::vector<std::vector<double>> symbols;
  for (int i = 0; i <= 1000; ++i) {
    const double r = 0.01 * i;
    symbols.push_back({r, mollifier_profile(MollifierKind::gaussian, r), mollifier_profile(MollifierKind::bump, r),
                       dyadic_profile(r), binary_cutoff(r)});
  }
  write_table_csv(cfg.out_dir / "symbols.csv", {"r", "gaussian", "bump", "dyadic", "binary_cutoff"}, symbols);

  const SpectralField& u = traj.snapshots.back();
  SpectralField sum(grid);
  for (int j = part.jmin(); j <= part.jmax(); ++j) sum += dyadic_block(u, part, j);
  const double scale = l2_norm(u);
  const double reassembly = scale > 0.0 ? l2_norm(sum - u) / scale : l2_norm(sum - u);
  std::vector<Check> checks{{"lp_reassembly_defect", reassembly, 1e-12, reassembly <= 1e-12}};
  if (scale > 0.0) {
    const double ratio = almost_orthogonality_ratio(u, part);
    checks.push_back({"lp_almost_orthogonality_ratio", ratio, 1.0, ratio >= 0.5 && ratio <= 1.0});
  }
  return report_checks(cfg, checks, log);
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
  cfg.validate();
  std::filesystem::create_directories(cfg.out_dir);
  const Trajectory traj = write_base_run(cfg, log);
  switch (cfg.experiment) {
    case Experiment::run: return 0;
    case Experiment::verify: return report_checks(cfg, verification_checks(cfg), log);
    case Experiment::unify: return unify_experiment(cfg, traj, log);
    case Experiment::convergence: return convergence_experiment(cfg, traj, log);
    case Experiment::blocks: return blocks_experiment(cfg, traj, log);
  }
  return 2;
}

}  // namespace synergy
