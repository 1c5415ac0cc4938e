#include "synergy/grid.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "synergy/error.hpp"

namespace synergy {

GridSpec::GridSpec(int n, double dealias_fraction) : n_(n), dealias_fraction_(dealias_fraction) {
  if (n < 4 || n % 2 != 0) throw Error(ErrorCode::RangeError, "n must be even >= 4");
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw Error(ErrorCode::RangeError, "dealias_fraction must lie in (0, 1]");
  }
}

int GridSpec::dealias_cutoff() const noexcept {
  // Small slack so fraction 1 keeps n/2 despite rounding in the product.
  return static_cast<int>(std::floor(dealias_fraction_ * (n_ / 2) + 1e-9));
}

namespace {

std::shared_ptr<const WaveTable> build(const GridSpec& grid) {
  auto table = std::make_shared<WaveTable>();
  const int n = grid.n();
  const std::size_t size = grid.size();
  for (auto& k : table->k_eff) k.resize(size);
  table->k2.resize(size);
  table->inv_k2_eff.resize(size);
  table->dealias_mask.resize(size);
  table->mirror.resize(size);

  const int cutoff = grid.dealias_cutoff();
  auto effective = [n](int k) { return k == n / 2 ? 0.0 : static_cast<double>(k); };
  for (int i1 = 0; i1 < n; ++i1) {
    const int k1 = grid.wavenumber(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const int k2 = grid.wavenumber(i2);
      for (int i3 = 0; i3 < n; ++i3) {
        const int k3 = grid.wavenumber(i3);
        const std::size_t idx = grid.flat(i1, i2, i3);
        const double e1 = effective(k1), e2 = effective(k2), e3 = effective(k3);
        table->k_eff[0][idx] = e1;
        table->k_eff[1][idx] = e2;
        table->k_eff[2][idx] = e3;
        table->k2[idx] = static_cast<double>(k1 * k1 + k2 * k2 + k3 * k3);
        const double ke2 = e1 * e1 + e2 * e2 + e3 * e3;
        table->inv_k2_eff[idx] = ke2 > 0.0 ? 1.0 / ke2 : 0.0;
        const bool kept = std::abs(k1) <= cutoff && std::abs(k2) <= cutoff && std::abs(k3) <= cutoff;
        table->dealias_mask[idx] = kept ? 1.0 : 0.0;
        table->mirror[idx] = grid.flat((n - i1) % n, (n - i2) % n, (n - i3) % n);
      }
    }
  }
  return table;
}

}  // namespace

std::shared_ptr<const WaveTable> WaveTable::get(const GridSpec& grid) {
  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::shared_ptr<const WaveTable>> cache;
  const std::lock_guard lock(mutex);
  auto& slot = cache[{grid.n(), grid.dealias_fraction()}];
  if (!slot) slot = build(grid);
  return slot;
}

}  // namespace synergy
