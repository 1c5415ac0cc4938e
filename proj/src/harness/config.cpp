#include "synergy/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "synergy/error.hpp"

namespace synergy {

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::run: return "run";
    case Experiment::verify: return "verify";
    case Experiment::unify: return "unify";
    case Experiment::convergence: return "convergence";
    case Experiment::blocks: return "blocks";
  }
  return "unknown";
}

Experiment parse_experiment(const std::string& name) {
  if (name == "run") return Experiment::run;
  if (name == "verify") return Experiment::verify;
  if (name == "unify") return Experiment::unify;
  if (name == "convergence") return Experiment::convergence;
  if (name == "blocks") return Experiment::blocks;
  throw Error(ErrorCode::RangeError, "unknown experiment '" + name + "'");
}

std::string initial_data_name(InitialData init) {
  switch (init) {
    case InitialData::taylor_green: return "taylor-green";
    case InitialData::shear: return "shear";
    case InitialData::random: return "random";
  }
  return "unknown";
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_real(const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) throw std::invalid_argument("expected a real number");
  return value;
}

long long to_integer(const std::string& text) {
  long long value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) throw std::invalid_argument("expected an integer");
  return value;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"experiment", [](auto& c, const auto& v) { c.experiment = parse_experiment(v); }},
      {"n", [](auto& c, const auto& v) {
         const long long n = to_integer(v);
         if (n < 4 || n > 4096 || n % 2 != 0) throw Error(ErrorCode::RangeError, "n must be even >= 4");
         c.n = static_cast<int>(n);
       }},
      {"nu", [](auto& c, const auto& v) { c.solver.nu = to_real(v); }},
      {"dt", [](auto& c, const auto& v) { c.solver.dt = to_real(v); }},
      {"t_end", [](auto& c, const auto& v) { c.solver.t_end = to_real(v); }},
      {"scheme", [](auto& c, const auto& v) { c.solver.scheme = parse_scheme(v); }},
      {"galerkin_cutoff", [](auto& c, const auto& v) { c.solver.galerkin_cutoff = to_real(v); }},
      {"seed", [](auto& c, const auto& v) {
         const long long seed = to_integer(v);
         if (seed < 0) throw Error(ErrorCode::RangeError, "seed must be >= 0");
         c.solver.seed = static_cast<std::uint64_t>(seed);
       }},
      {"cadence", [](auto& c, const auto& v) { c.solver.cadence = static_cast<int>(to_integer(v)); }},
      {"init", [](auto& c, const auto& v) {
         if (v == "taylor-green") c.init = InitialData::taylor_green;
         else if (v == "shear") c.init = InitialData::shear;
         else if (v == "random") c.init = InitialData::random;
         else throw Error(ErrorCode::RangeError, "unknown initial data '" + v + "'");
       }},
      {"init_s", [](auto& c, const auto& v) { c.init_s = to_real(v); }},
      {"s_list", [](auto& c, const auto& v) { c.s_list = parse_real_list(v); }},
      {"eps_list", [](auto& c, const auto& v) { c.eps_list = parse_real_list(v); }},
      {"r1", [](auto& c, const auto& v) { c.r1 = to_real(v); }},
      {"r2", [](auto& c, const auto& v) { c.r2 = to_real(v); }},
      {"mollifier", [](auto& c, const auto& v) {
         if (v == "gaussian") c.mollifier = MollifierKind::gaussian;
         else if (v == "bump") c.mollifier = MollifierKind::bump;
         else throw Error(ErrorCode::RangeError, "unknown mollifier '" + v + "'");
       }},
      {"variant", [](auto& c, const auto& v) {
         if (v == "weighted") c.variant = InterpolationVariant::weighted;
         else if (v == "binary") c.variant = InterpolationVariant::binary;
         else throw Error(ErrorCode::RangeError, "unknown interpolation variant '" + v + "'");
       }},
      {"out", [](auto& c, const auto& v) { c.out_dir = v; }},
  };
  return table;
}

std::string where(int line, std::size_t column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(to_real(trim(item)));
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::ParseError, "bad list entry '" + trim(item) + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty list");
  return out;
}

void ExperimentConfig::validate() const {
  if (n < 4 || n % 2 != 0 || n > 4096) throw Error(ErrorCode::RangeError, "n must be even >= 4");
  solver.validate();
  if (!(init_s >= 0.0)) throw Error(ErrorCode::RangeError, "init_s must be >= 0");
  for (double s : s_list) {
    if (!std::isfinite(s) || s < 0.0) throw Error(ErrorCode::RangeError, "s_list entries must be >= 0");
  }
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0) || !std::isfinite(eps_list[i])) throw Error(ErrorCode::RangeError, "eps must be > 0");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw Error(ErrorCode::RangeError, "eps_list must be strictly decreasing");
    }
  }
  if (eps_list.empty()) throw Error(ErrorCode::RangeError, "eps_list must not be empty");
  weights().validate();
}

WeightPartition ExperimentConfig::weights() const {
  WeightPartition w = WeightPartition::defaults(GridSpec(n));
  if (r1 > 0.0) w.r1 = r1;
  if (r2 > 0.0) w.r2 = r2;
  return w;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::map<std::string, int> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) {
      if (eol == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      const auto col = line.find_first_not_of(" \t") + 1;
      throw Error(ErrorCode::ParseError, where(line_no, col) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::size_t key_col = line.find_first_not_of(" \t") + 1;
    const std::size_t value_col = eq + 2 + (line.substr(eq + 1).find_first_not_of(" \t") == std::string_view::npos
                                                ? 0
                                                : line.substr(eq + 1).find_first_not_of(" \t"));
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) throw Error(ErrorCode::ParseError, where(line_no, key_col) + ": unknown key '" + key + "'");
    if (const auto prev = seen.find(key); prev != seen.end()) {
      throw Error(ErrorCode::ParseError, "duplicate key '" + key + "' on lines " + std::to_string(prev->second) +
                                             " and " + std::to_string(line_no));
    }
    seen.emplace(key, line_no);
    try {
      it->second(cfg, value);
    } catch (const std::invalid_argument& e) {
      throw Error(ErrorCode::ParseError, where(line_no, value_col) + ": " + key + ": " + e.what());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::RangeError) throw;
      throw Error(ErrorCode::ParseError, where(line_no, value_col) + ": " + key + ": " + e.what());
    }
    if (eol == text.size()) break;
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace synergy
