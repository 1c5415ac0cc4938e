#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace synergy::kernels {

using Complex = std::complex<double>;

/// Inner loops shared by the spectral operators. Every implementation in this
/// table must produce bitwise-identical results: no FMA, and reductions use
/// four interleaved partial sums combined as (s0 + s1) + (s2 + s3).
struct KernelTable {
  std::string_view name;

  // c[i] *= m[i]
  void (*scale)(Complex* c, const double* m, std::size_t count);
  // out[i] = m[i] * in[i]
  void (*scale_into)(Complex* out, const Complex* in, const double* m, std::size_t count);
  // y[i] += a * x[i] over raw doubles
  void (*axpy)(double* y, double a, const double* x, std::size_t count);
  // c <- c - k (k.c) / |k|^2 per mode, with inv_k2 = 0 where k = 0
  void (*leray)(Complex* cx, Complex* cy, Complex* cz, const double* kx, const double* ky,
                const double* kz, const double* inv_k2, std::size_t count);
  // sum_i w[i] |c[i]|^2, w == nullptr means unit weights
  double (*weighted_norm2)(const Complex* c, const double* w, std::size_t count);
  // sum_i a[i] b[i] over raw doubles
  double (*dot)(const double* a, const double* b, std::size_t count);
  // out_i = (u_0 g_i0 + u_1 g_i1) + u_2 g_i2 with g_ij = grad[3 i + j]
  void (*advect)(double* const out[3], const double* const u[3], const double* const grad[9],
                 std::size_t count);
  // max_i (x^2 + y^2) + z^2
  double (*max_norm2)(const double* x, const double* y, const double* z, std::size_t count);
};

const KernelTable& scalar_table();

/// AVX2 table, or nullptr when not compiled in or unsupported by this CPU.
const KernelTable* avx2_table();

/// Table used by the library. Chosen once: AVX2 when available unless
/// SYNERGY_SIMD=scalar is set in the environment.
const KernelTable& active();

}  // namespace synergy::kernels
