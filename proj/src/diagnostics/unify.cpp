#include <algorithm>
#include <cmath>

#include "synergy/diagnostics.hpp"
#include "synergy/error.hpp"
#include "synergy/parallel.hpp"
#include "synergy/spectral_ops.hpp"
#include "synergy/transform.hpp"

namespace synergy {

SpectralField unify_snapshot(const SpectralField& uw, const SpectralField& um, const SpectralField& us,
                             const WeightPartition& w, const MollifierSpec& spec, InterpolationVariant variant) {
  if (!(uw.grid() == um.grid() && um.grid() == us.grid())) throw Error(ErrorCode::GridMismatch, "unify_snapshot");
  SpectralField out = smooth(interpolate(regularize(uw, spec), regularize(um, spec), regularize(us, spec), w, spec, variant), spec);
  out.set_time(us.time());
  return out;
}

Reconstruction unify_and_reconstruct(const Trajectory& weak, const Trajectory& mild, const Trajectory& strong,
                                     const WeightPartition& w, const MollifierSpec& spec,
                                     InterpolationVariant variant) {
  const std::size_t count = strong.snapshots.size();
  if (weak.snapshots.size() != count || mild.snapshots.size() != count) {
    throw Error(ErrorCode::TimeGridMismatch, "trajectories differ in snapshot count");
  }
  for (std::size_t m = 0; m < count; ++m) {
    const double t = strong.snapshots[m].time();
    const double tol = 1e-12 * std::max(1.0, std::abs(t));
    if (std::abs(weak.snapshots[m].time() - t) > tol || std::abs(mild.snapshots[m].time() - t) > tol) {
      throw Error(ErrorCode::TimeGridMismatch, "snapshot times differ at index " + std::to_string(m));
    }
    if (!(weak.snapshots[m].grid() == strong.snapshots[m].grid() &&
          mild.snapshots[m].grid() == strong.snapshots[m].grid())) {
      throw Error(ErrorCode::GridMismatch, "trajectories live on different grids");
    }
  }
  w.validate();

  Reconstruction out{Trajectory{strong.params, {}, "unified"}, 0.0};
  if (count == 0) return out;
  std::vector<SpectralField> fields(count, SpectralField(strong.snapshots.front().grid()));
  std::vector<double> defects(count, 0.0);
  parallel_for(count, [&](std::size_t m) {
    fields[m] = unify_snapshot(weak.snapshots[m], mild.snapshots[m], strong.snapshots[m], w, spec, variant);
    fields[m].set_label("unified");
    defects[m] = parseval_defect(fields[m]);
  });
  out.trajectory.snapshots = std::move(fields);
  out.max_parseval_defect = *std::max_element(defects.begin(), defects.end());
  return out;
}

ConvergenceTable convergence_study(const std::function<SpectralField(double)>& pipeline,
                                   const std::vector<double>& eps_seq, double s,
                                   const std::optional<SpectralField>& reference) {
  if (eps_seq.size() < 4) throw Error(ErrorCode::DegenerateSequence, "convergence study needs >= 4 epsilons");
  for (std::size_t i = 0; i < eps_seq.size(); ++i) {
    if (!(eps_seq[i] > 0.0) || (i > 0 && !(eps_seq[i] < eps_seq[i - 1]))) {
      throw Error(ErrorCode::DegenerateSequence, "epsilons must be positive and strictly decreasing");
    }
  }
  std::vector<std::optional<SpectralField>> results(eps_seq.size());
  parallel_for(eps_seq.size(), [&](std::size_t i) { results[i] = pipeline(eps_seq[i]); });

  const SpectralField& ref = reference ? *reference : *results.back();
  const std::size_t used = reference ? eps_seq.size() : eps_seq.size() - 1;
  ConvergenceTable table;
  for (std::size_t i = 0; i < used; ++i) {
    table.eps.push_back(eps_seq[i]);
    table.errors.push_back(sobolev_norm(*results[i] - ref, s));
  }

  const double tol = 1e-13 * sobolev_norm(ref, s);
  table.monotone = true;
  for (std::size_t i = 1; i < table.errors.size(); ++i) {
    if (table.errors[i] > table.errors[i - 1] + tol) table.monotone = false;
  }
  table.exact = std::all_of(table.errors.begin(), table.errors.end(), [](double e) { return e == 0.0; });

  std::vector<double> x, y;
  for (std::size_t i = 0; i < table.errors.size(); ++i) {
    if (table.errors[i] > 0.0) {
      x.push_back(table.eps[i]);
      y.push_back(table.errors[i]);
    }
  }
  table.slope = x.size() >= 2 ? loglog_slope(x, y) : 0.0;
  return table;
}

}  // namespace synergy
