#include "synergy/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "synergy/error.hpp"
#include "synergy/grid.hpp"

namespace synergy {
namespace {

// In-place c2c plans for one grid size. FFTW planning is not thread-safe, so
// plans are created under a global lock; executing them with the new-array
// interface is. Plans assume SIMD alignment, so data always passes through an
// fftw-allocated workspace.
class FftPlans {
 public:
  explicit FftPlans(int n) {
    const std::size_t size = static_cast<std::size_t>(n) * n * n;
    fftw_complex* scratch = fftw_alloc_complex(size);
    const unsigned flags = FFTW_ESTIMATE;
    forward_ = fftw_plan_dft_3d(n, n, n, scratch, scratch, FFTW_FORWARD, flags);
    backward_ = fftw_plan_dft_3d(n, n, n, scratch, scratch, FFTW_BACKWARD, flags);
    fftw_free(scratch);
  }
  ~FftPlans() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

  void forward(Complex* data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(forward_, p, p);
  }
  void backward(Complex* data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(backward_, p, p);
  }

  static const FftPlans& get(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<FftPlans>> cache;
    const std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<FftPlans>(n);
    return *slot;
  }

 private:
  fftw_plan forward_;
  fftw_plan backward_;
};

struct FftwFree {
  void operator()(Complex* p) const { fftw_free(p); }
};

// Per-thread aligned scratch, grown on demand.
Complex* workspace(std::size_t size) {
  thread_local std::unique_ptr<Complex[], FftwFree> buffer;
  thread_local std::size_t capacity = 0;
  if (capacity < size) {
    buffer.reset(reinterpret_cast<Complex*>(fftw_alloc_complex(size)));
    capacity = size;
  }
  return buffer.get();
}

}  // namespace

namespace detail {

void to_physical(const GridSpec& grid, std::span<const Complex> coeffs, std::span<double> out) {
  Complex* work = workspace(coeffs.size());
  std::copy(coeffs.begin(), coeffs.end(), work);
  FftPlans::get(grid.n()).backward(work);
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = work[i].real();
}

void to_spectral(const GridSpec& grid, std::span<const double> samples, std::span<Complex> out) {
  Complex* work = workspace(samples.size());
  std::copy(samples.begin(), samples.end(), work);
  FftPlans::get(grid.n()).forward(work);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (std::size_t i = 0; i < samples.size(); ++i) out[i] = work[i] * scale;
}

void to_physical_batch(const GridSpec& grid, std::span<const std::span<const Complex>> coeffs,
                       std::span<const std::span<double>> out) {
  if (coeffs.size() != out.size()) throw Error(ErrorCode::InvalidArgument, "batch size mismatch");
  const std::size_t size = grid.size();
  Complex* work = workspace(size);
  std::size_t f = 0;
  for (; f + 1 < coeffs.size(); f += 2) {
    // IFFT(a + i b) = a(x) + i b(x) when both spectra are Hermitian
    const auto a = coeffs[f];
    const auto b = coeffs[f + 1];
    for (std::size_t i = 0; i < size; ++i) work[i] = Complex(a[i].real() - b[i].imag(), a[i].imag() + b[i].real());
    FftPlans::get(grid.n()).backward(work);
    for (std::size_t i = 0; i < size; ++i) {
      out[f][i] = work[i].real();
      out[f + 1][i] = work[i].imag();
    }
  }
  if (f < coeffs.size()) to_physical(grid, coeffs[f], out[f]);
}

void to_spectral_batch(const GridSpec& grid, std::span<const std::span<const double>> samples,
                       std::span<const std::span<Complex>> out) {
  if (samples.size() != out.size()) throw Error(ErrorCode::InvalidArgument, "batch size mismatch");
  const std::size_t size = grid.size();
  const auto table = WaveTable::get(grid);
  const double half_scale = 0.5 / static_cast<double>(size);
  Complex* work = workspace(size);
  std::size_t f = 0;
  for (; f + 1 < samples.size(); f += 2) {
    const auto p = samples[f];
    const auto q = samples[f + 1];
    for (std::size_t i = 0; i < size; ++i) work[i] = Complex(p[i], q[i]);
    FftPlans::get(grid.n()).forward(work);
    // split Z = P + i Q with P(k) = (Z(k) + conj Z(-k)) / 2, Q(k) = (Z(k) - conj Z(-k)) / 2i
    for (std::size_t i = 0; i < size; ++i) {
      const Complex z = work[i];
      const Complex zm = std::conj(work[table->mirror[i]]);
      const Complex sum = z + zm;
      const Complex diff = z - zm;
      out[f][i] = sum * half_scale;
      out[f + 1][i] = Complex(diff.imag(), -diff.real()) * half_scale;
    }
  }
  if (f < samples.size()) to_spectral(grid, samples[f], out[f]);
}

}  // namespace detail

SpectralField forward_transform(const PhysicalField& f) {
  SpectralField out(f.grid());
  const std::array<std::span<const double>, 3> samples{f.component(0), f.component(1), f.component(2)};
  const std::array<std::span<Complex>, 3> coeffs{out.component(0), out.component(1), out.component(2)};
  detail::to_spectral_batch(f.grid(), samples, coeffs);
  return out;
}

PhysicalField inverse_transform(const SpectralField& f) {
  double scale = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (const auto& v : f.component(c)) scale = std::max(scale, std::abs(v));
  }
  const double defect = hermitian_defect(f);
  if (defect > 1e-9 * std::max(scale, 1e-300)) {
    throw Error(ErrorCode::SymmetryViolation,
                "Hermitian defect " + std::to_string(defect) + " exceeds tolerance");
  }
  PhysicalField out(f.grid());
  const std::array<std::span<const Complex>, 3> coeffs{f.component(0), f.component(1), f.component(2)};
  const std::array<std::span<double>, 3> samples{out.component(0), out.component(1), out.component(2)};
  detail::to_physical_batch(f.grid(), coeffs, samples);
  return out;
}

}  // namespace synergy
