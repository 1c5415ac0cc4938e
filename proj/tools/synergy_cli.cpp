#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "synergy/config.hpp"
#include "synergy/error.hpp"
#include "synergy/experiments.hpp"

namespace {

enum Exit { pass = 0, check_failure = 1, usage_error = 2, numerical_abort = 3 };

int exit_for(synergy::ErrorCode code) {
  using synergy::ErrorCode;
  switch (code) {
    case ErrorCode::NumericalAbort:
    case ErrorCode::CflViolation: return numerical_abort;
    case ErrorCode::ParseError:
    case ErrorCode::RangeError:
    case ErrorCode::BadCutoff:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DegenerateSequence: return usage_error;
    default: return check_failure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral Navier-Stokes toolkit on the periodic cube"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<int> n;
  std::optional<double> nu, dt, t_end;
  std::optional<std::string> eps;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--n", n, "grid points per axis (even, >= 4)");
    sub->add_option("--nu", nu, "viscosity");
    sub->add_option("--dt", dt, "time step");
    sub->add_option("--t-end", t_end, "final time");
    sub->add_option("--eps", eps, "mollifier scales, comma separated, decreasing");
    sub->add_option("--seed", seed, "seed for random initial data");
    sub->add_option("--out", out, "output directory");
  };
  const std::pair<const char*, const char*> commands[] = {
      {"run", "integrate and write snapshots and diagnostics"},
      {"verify", "run the self-check battery"},
      {"unify", "reconstruct the unified solution from three schemes"},
      {"convergence", "mollifier and pipeline convergence in eps"},
      {"blocks", "dyadic block energies and symbol tables"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? pass : usage_error;
  }

  synergy::ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = synergy::load_config(config_path);
    cfg.experiment = synergy::parse_experiment(app.get_subcommands().front()->get_name());
    if (n) cfg.n = *n;
    if (nu) cfg.solver.nu = *nu;
    if (dt) cfg.solver.dt = *dt;
    if (t_end) cfg.solver.t_end = *t_end;
    if (eps) cfg.eps_list = synergy::parse_real_list(*eps);
    if (seed) cfg.solver.seed = *seed;
    if (out) cfg.out_dir = *out;
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "synergy: " << e.what() << '\n';
    return usage_error;
  }

  try {
    return synergy::run_experiment(cfg, std::cout) == 0 ? pass : check_failure;
  } catch (const synergy::Error& e) {
    std::cerr << "synergy: " << e.what() << '\n';
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "synergy: " << e.what() << '\n';
    return check_failure;
  }
}
