#pragma once

#include <iosfwd>
#include <vector>

#include "synergy/config.hpp"
#include "synergy/report.hpp"

namespace synergy {

SpectralField initial_field(const ExperimentConfig& cfg);

/// Named self-checks run by `verify`, in a fixed order; evaluated
/// concurrently (capped by SYNERGY_THREADS).
std::vector<Check> verification_checks(const ExperimentConfig& cfg);

/// Runs the configured experiment, writing artifacts under cfg.out_dir and a
/// short report to `log`. Returns 0 when every check passes, 1 otherwise.
/// Library errors propagate as synergy::Error.
int run_experiment(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace synergy
