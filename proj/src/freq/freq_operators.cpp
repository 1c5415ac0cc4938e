#include "synergy/freq_operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "synergy/error.hpp"
#include "synergy/kernels.hpp"
#include "synergy/spectral_ops.hpp"
#include "synergy/transform.hpp"

namespace synergy {
namespace {

constexpr double pi = std::numbers::pi;

double bump(double x) { return x < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; }

// Radial Fourier transform of the unit-ball bump, unnormalised:
// 4 pi int_0^1 x^2 b(x) sin(r x) / (r x) dx. The integrand is even at 0 and
// flat at 1, so the trapezoid rule converges very fast.
double bump_transform(double r) {
  constexpr int nodes = 1000;
  const double h = 1.0 / nodes;
  double sum = 0.0;
  for (int i = 1; i < nodes; ++i) {
    const double x = i * h;
    const double sinc = r == 0.0 ? 1.0 : std::sin(r * x) / (r * x);
    sum += x * x * bump(x) * sinc;
  }
  return 4.0 * pi * h * sum;
}

// Symbol table uniform in q = r^2, so linear interpolation keeps the
// quadratic behaviour at the origin.
class BumpTable {
 public:
  BumpTable() {
    const double mass = bump_transform(0.0);
    auto value = [mass](double r) { return bump_transform(r) / mass; };
    double lo = 0.0, hi = 0.5;
    while (value(hi) > 0.0) {
      lo = hi;
      hi += 0.5;
    }
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (value(mid) > 0.0 ? lo : hi) = mid;
    }
    q_max_ = lo * lo;
    step_ = q_max_ / (entries - 1);
    table_.resize(entries);
    double running = 1.0;
    for (int i = 0; i < entries; ++i) {
      const double v = i == 0 ? 1.0 : value(std::sqrt(i * step_));
      running = std::min(running, std::clamp(v, 0.0, 1.0));
      table_[i] = running;
    }
    table_.back() = 0.0;
  }

  double operator()(double r) const {
    const double q = r * r;
    if (q >= q_max_) return 0.0;
    const double pos = q / step_;
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return table_[i] + frac * (table_[i + 1] - table_[i]);
  }

  static const BumpTable& instance() {
    static const BumpTable table;
    return table;
  }

 private:
  static constexpr int entries = 2048;
  double q_max_ = 0.0;
  double step_ = 0.0;
  std::vector<double> table_;
};

void require_positive_eps(const MollifierSpec& spec) {
  if (!(spec.eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "mollifier eps must be positive");
}

std::vector<double> symbol_table(const GridSpec& grid, const MollifierSpec& spec) {
  const auto table = WaveTable::get(grid);
  std::vector<double> m(grid.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = mollifier_profile(spec.kind, spec.eps * std::sqrt(table->k2[i]));
  return m;
}

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw Error(ErrorCode::GridMismatch, "interpolate: fields on different grids");
}

}  // namespace

double mollifier_profile(MollifierKind kind, double r) {
  r = std::abs(r);
  switch (kind) {
    case MollifierKind::gaussian: return std::exp(-0.5 * r * r);
    case MollifierKind::bump: return BumpTable::instance()(r);
  }
  return 0.0;
}

double mollifier_symbol(const MollifierSpec& spec, const Vec3& k) {
  require_positive_eps(spec);
  return mollifier_profile(spec.kind, spec.eps * std::hypot(k[0], k[1], k[2]));
}

SpectralField smooth(const SpectralField& f, const MollifierSpec& spec, bool project) {
  require_positive_eps(spec);
  const std::vector<double> m = symbol_table(f.grid(), spec);
  SpectralField out = f;
  for (int c = 0; c < 3; ++c) kernels::active().scale(out.component(c).data(), m.data(), out.size());
  return project ? leray_project(out) : out;
}

SpectralField regularize(const SpectralField& v, const MollifierSpec& spec) {
  return leray_project(smooth(v, spec));
}

WeightPartition WeightPartition::defaults(const GridSpec& grid) {
  return {grid.n() / 8.0, 3.0 * grid.n() / 8.0};
}

void WeightPartition::validate() const {
  if (!(r1 > 0.0 && r2 > r1)) throw Error(ErrorCode::RangeError, "weight partition needs r2 > r1 > 0");
}

BandWeights weight_eval(const WeightPartition& w, double kmag) {
  const double d = WeightPartition::ramp_width;
  double weak = 0.0;
  const double weak_start = w.r1 * (1.0 - d);
  if (kmag <= weak_start) {
    weak = 1.0;
  } else if (kmag < w.r1) {
    weak = 0.5 * (1.0 + std::cos(pi * (kmag - weak_start) / (w.r1 * d)));
  }
  double strong = 0.0;
  const double strong_end = w.r2 * (1.0 + d);
  if (kmag >= strong_end) {
    strong = 1.0;
  } else if (kmag > w.r2) {
    strong = 0.5 * (1.0 - std::cos(pi * (kmag - w.r2) / (w.r2 * d)));
  }
  return {weak, 1.0 - weak - strong, strong};
}

double binary_cutoff(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  return 0.5 * (1.0 + std::cos(pi * (r - 1.0)));
}

std::vector<double> physical_window(const GridSpec& grid, const MollifierSpec& spec) {
  require_positive_eps(spec);
  const int n = grid.n();
  std::vector<double> axis(n);
  for (int i = 0; i < n; ++i) {
    const int shifted = i <= n / 2 ? i : i - n;
    axis[i] = GridSpec::period * shifted / n;
  }
  std::vector<double> w(grid.size());
  double total = 0.0;
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      for (int i3 = 0; i3 < n; ++i3) {
        const double d = std::hypot(axis[i1], axis[i2], axis[i3]);
        const double v = mollifier_profile(spec.kind, spec.eps * d);
        w[grid.flat(i1, i2, i3)] = v;
        total += v;
      }
    }
  }
  const double mean = total / static_cast<double>(grid.size());
  if (!(mean > 0.0)) throw Error(ErrorCode::InvalidArgument, "physical window vanishes; eps too large");
  for (auto& v : w) v /= mean;
  return w;
}

SpectralField interpolate(const SpectralField& uw, const SpectralField& um, const SpectralField& us,
                          const WeightPartition& w, const MollifierSpec& spec,
                          InterpolationVariant variant) {
  require_same_grid(uw, um);
  require_same_grid(uw, us);
  require_positive_eps(spec);
  const GridSpec& grid = uw.grid();
  const auto table = WaveTable::get(grid);
  SpectralField out(grid);
  out.set_time(uw.time());

  if (variant == InterpolationVariant::binary) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double eta = binary_cutoff(spec.eps * std::sqrt(table->k2[i]));
      for (int c = 0; c < 3; ++c) {
        out.component(c)[i] = eta * uw.component(c)[i] + (1.0 - eta) * us.component(c)[i];
      }
    }
    out.set_solenoidal(uw.solenoidal() && us.solenoidal());
    out.set_mean_free(uw.mean_free() && us.mean_free());
    return out;
  }

  w.validate();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const BandWeights bw = weight_eval(w, std::sqrt(table->k2[i]));
    for (int c = 0; c < 3; ++c) {
      out.component(c)[i] = bw.weak * uw.component(c)[i] + bw.mild * um.component(c)[i] +
                            bw.strong * us.component(c)[i];
    }
  }
  const std::vector<double> window = physical_window(grid, spec);
  std::vector<double> samples(grid.size());
  for (int c = 0; c < 3; ++c) {
    detail::to_physical(grid, out.component(c), samples);
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] *= window[i];
    detail::to_spectral(grid, samples, out.component(c));
  }
  return leray_project(out);
}

}  // namespace synergy
