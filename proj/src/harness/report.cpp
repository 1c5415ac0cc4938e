#include "synergy/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "synergy/error.hpp"
#include "synergy/snapshot.hpp"

namespace synergy {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

double hs_or_nan(const DiagnosticsRecord& rec, double s) {
  const auto it = rec.hs_norms.find(s);
  return it == rec.hs_norms.end() ? std::nan("") : it->second;
}

}  // namespace

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& records) {
  auto out = open_out(path);
  out << "t,energy,enstrophy,bkm,div_defect,res_weak,res_mild,res_strong,h1,h2,h3\n";
  for (const auto& r : records) {
    const double row[] = {r.t,        r.energy,   r.enstrophy,      r.bkm,           r.div_defect,   r.res_weak,
                          r.res_mild, r.res_strong, hs_or_nan(r, 1.0), hs_or_nan(r, 2.0), hs_or_nan(r, 3.0)};
    for (std::size_t i = 0; i < std::size(row); ++i) out << (i ? "," : "") << format_real(row[i]);
    out << '\n';
  }
}

void write_manifest(const std::filesystem::path& path, const Trajectory& traj,
                    const std::vector<std::string>& snapshot_files) {
  auto out = open_out(path);
  const int n = traj.snapshots.empty() ? 0 : traj.snapshots.front().grid().n();
  out << "scheme=" << traj.scheme << '\n'
      << "nu=" << format_real(traj.params.nu) << '\n'
      << "dt=" << format_real(traj.params.dt) << '\n'
      << "n=" << n << '\n'
      << "seed=" << traj.params.seed << '\n'
      << "snapshots=";
  for (std::size_t i = 0; i < snapshot_files.size(); ++i) out << (i ? "," : "") << snapshot_files[i];
  out << '\n';
}

void write_summary_json(const std::filesystem::path& path, const std::vector<Check>& checks) {
  nlohmann::ordered_json doc;
  doc["checks"] = nlohmann::ordered_json::array();
  auto number = [](double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(); };
  for (const auto& c : checks) {
    doc["checks"].push_back({{"name", c.name}, {"value", number(c.value)}, {"bound", number(c.bound)}, {"pass", c.pass}});
  }
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

std::vector<std::string> write_snapshots(const std::filesystem::path& dir, const Trajectory& traj) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> names;
  for (std::size_t m = 0; m < traj.snapshots.size(); ++m) {
    char name[32];
    std::snprintf(name, sizeof name, "snap_%05zu.sns", m);
    write_snapshot(dir / name, traj.snapshots[m], traj.params.nu);
    names.emplace_back(name);
  }
  return names;
}

void write_plot_script(const std::filesystem::path& path, const std::string& csv_name) {
  auto out = open_out(path);
  out << "# gnuplot " << path.filename().string() << "\n"
      << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set terminal pngcairo size 1200,800\n"
      << "set output 'diagnostics.png'\n"
      << "set multiplot layout 2,2\n"
      << "set xlabel 't'\n"
      << "plot '" << csv_name << "' using 1:2 with lines, '' using 1:3 with lines\n"
      << "plot '" << csv_name << "' using 1:4 with lines\n"
      << "set logscale y\n"
      << "plot '" << csv_name << "' using 1:6 with lines, '' using 1:7 with lines, '' using 1:8 with lines\n"
      << "plot '" << csv_name << "' using 1:9 with lines, '' using 1:10 with lines, '' using 1:11 with lines\n"
      << "unset multiplot\n";
}

void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_real(row[i]);
    out << '\n';
  }
}

}  // namespace synergy
