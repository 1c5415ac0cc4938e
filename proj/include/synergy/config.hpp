#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "synergy/freq_operators.hpp"
#include "synergy/ns_solvers.hpp"

namespace synergy {

enum class Experiment { run, verify, unify, convergence, blocks };
enum class InitialData { taylor_green, shear, random };

std::string experiment_name(Experiment e);
Experiment parse_experiment(const std::string& name);
std::string initial_data_name(InitialData init);

/// Everything an experiment needs. Solver fields live in `solver`; the
/// forcing is always empty when read from a file.
struct ExperimentConfig {
  Experiment experiment = Experiment::run;
  int n = 16;
  SolverParams solver;
  InitialData init = InitialData::taylor_green;
  /// Sobolev index of the random initial data.
  double init_s = 1.0;
  std::vector<double> s_list{1.0, 2.0, 3.0};
  std::vector<double> eps_list{0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625};
  /// Band radii; zero selects n/8 and 3n/8.
  double r1 = 0.0;
  double r2 = 0.0;
  MollifierKind mollifier = MollifierKind::gaussian;
  InterpolationVariant variant = InterpolationVariant::weighted;
  std::filesystem::path out_dir = "out";

  /// Throws RangeError naming the first out-of-range field.
  void validate() const;
  WeightPartition weights() const;
};

/// Line-oriented `key = value` text; `#` starts a comment. Unknown keys and
/// malformed values raise ParseError with line and column; duplicate keys
/// name both lines. The result is validated.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Comma-separated list of reals.
std::vector<double> parse_real_list(const std::string& text);

}  // namespace synergy
