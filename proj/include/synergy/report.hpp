#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "synergy/diagnostics.hpp"

namespace synergy {

/// Shortest decimal that reads back to the same double; "nan", "inf", "-inf"
/// for non-finite values.
std::string format_real(double value);

struct Check {
  std::string name;
  double value;
  double bound;
  bool pass;
};

/// `t,energy,enstrophy,bkm,div_defect,res_weak,res_mild,res_strong,h1,h2,h3`,
/// one row per record; h1..h3 read from hs_norms (missing entries are nan).
void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& records);

/// key=value lines: scheme, nu, dt, n, seed, and snapshots as a
/// comma-separated list of file names relative to the manifest.
void write_manifest(const std::filesystem::path& path, const Trajectory& traj,
                    const std::vector<std::string>& snapshot_files);

/// {"checks": [{"name", "value", "bound", "pass"}]}; non-finite numbers as null.
void write_summary_json(const std::filesystem::path& path, const std::vector<Check>& checks);

/// Writes snap_00000.sns, snap_00001.sns, ... into `dir`; returns the names.
std::vector<std::string> write_snapshots(const std::filesystem::path& dir, const Trajectory& traj);

/// Plain gnuplot script plotting the diagnostics CSV next to it.
void write_plot_script(const std::filesystem::path& path, const std::string& csv_name);

/// Generic CSV with the given header and rows of reals.
void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

}  // namespace synergy
