#include <cmath>
#include <random>

#include "synergy/error.hpp"
#include "synergy/ns_solvers.hpp"
#include "synergy/spectral_ops.hpp"

namespace synergy {

SpectralField taylor_green_init(const GridSpec& grid) {
  // sin x1 cos x2 cos x3 and -cos x1 sin x2 cos x3 expand onto k = (s1,s2,s3),
  // s_i = +-1, with coefficients -i s1/8 and i s2/8.
  SpectralField u(grid);
  for (int s1 : {-1, 1}) {
    for (int s2 : {-1, 1}) {
      for (int s3 : {-1, 1}) {
        const std::size_t idx = grid.flat_k(s1, s2, s3);
        u.component(0)[idx] = Complex(0.0, -0.125 * s1);
        u.component(1)[idx] = Complex(0.0, 0.125 * s2);
      }
    }
  }
  u.set_solenoidal(true);
  u.set_mean_free(true);
  u.set_label("taylor-green");
  return u;
}

SpectralField shear_init(const GridSpec& grid, double amplitude) {
  SpectralField u(grid);
  u.set_mode(1, 0, 0, {Complex{}, Complex(0.0, -0.5 * amplitude), Complex{}});
  u.set_solenoidal(true);
  u.set_mean_free(true);
  u.set_label("shear");
  return u;
}

SpectralField random_solenoidal_init(const GridSpec& grid, double s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  const auto table = WaveTable::get(grid);
  SpectralField u(grid);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const std::size_t mirror = table->mirror[i];
    if (mirror < i) continue;
    const double amp = std::pow(1.0 + table->k2[i], -(s + 1.0));
    for (int c = 0; c < 3; ++c) {
      const double re = uniform();
      const double im = uniform();
      if (mirror == i) {
        u.component(c)[i] = amp * re;
      } else {
        u.component(c)[i] = amp * Complex(re, im);
        u.component(c)[mirror] = amp * Complex(re, -im);
      }
    }
  }
  u = leray_project(u);
  u.remove_mean();
  u *= 1.0 / sobolev_norm(u, s);
  u.set_label("random");
  return u;
}

}  // namespace synergy
