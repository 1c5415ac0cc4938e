#pragma once

#include <cmath>

#include "synergy/field.hpp"
#include "synergy/spectral_ops.hpp"

namespace testing {

inline double rel_diff(const synergy::SpectralField& a, const synergy::SpectralField& b) {
  const double scale = synergy::l2_norm(b);
  const double diff = synergy::l2_norm(a - b);
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace testing
