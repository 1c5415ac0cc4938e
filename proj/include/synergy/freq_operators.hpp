#pragma once

#include <vector>

#include "synergy/field.hpp"

namespace synergy {

enum class MollifierKind { gaussian, bump };

/// Scale and profile of the frequency-side mollifier. The symbol acting on
/// coefficients is profile(eps |k|) with profile(0) = 1, values in [0, 1] and
/// radially non-increasing.
struct MollifierSpec {
  double eps;
  MollifierKind kind = MollifierKind::gaussian;
};

/// gaussian: exp(-r^2/2). bump: normalised transform of the unit-ball bump
/// exp(-1/(1-|x|^2)), held at zero beyond its first zero.
double mollifier_profile(MollifierKind kind, double r);
double mollifier_symbol(const MollifierSpec& spec, const Vec3& k);

/// Coefficientwise multiplication by the mollifier symbol. With `project`
/// the result is also Leray-projected.
SpectralField smooth(const SpectralField& f, const MollifierSpec& spec, bool project = false);

/// Leray projection of the smoothed field (the torus extension is the identity).
SpectralField regularize(const SpectralField& v, const MollifierSpec& spec);

/// Three-band partition of unity in |k| with raised-cosine ramps of
/// relative half-width `ramp_width`.
struct WeightPartition {
  static constexpr double ramp_width = 0.25;
  double r1;
  double r2;

  static WeightPartition defaults(const GridSpec& grid);
  void validate() const;
};

struct BandWeights {
  double weak;
  double mild;
  double strong;
};

/// weak + mild + strong == 1 exactly; mild is defined as the remainder.
BandWeights weight_eval(const WeightPartition& w, double kmag);

/// eta(r) = 1 on [0,1], 0 on [2, inf), raised cosine in between.
double binary_cutoff(double r);

enum class InterpolationVariant { weighted, binary };

/// Blends three fields. weighted: the band-weighted sum multiplied in
/// physical space by `physical_window`, then Leray-projected. binary:
/// eta(eps|k|) uw + (1 - eta(eps|k|)) us; `um` is ignored.
SpectralField interpolate(const SpectralField& uw, const SpectralField& um, const SpectralField& us,
                          const WeightPartition& w, const MollifierSpec& spec,
                          InterpolationVariant variant = InterpolationVariant::weighted);

/// Lattice samples of profile(eps |d(x)|) / mean, with d(x) the periodic
/// displacement from the origin in (-pi, pi]^3.
std::vector<double> physical_window(const GridSpec& grid, const MollifierSpec& spec);

}  // namespace synergy
