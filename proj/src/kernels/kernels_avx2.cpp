#include <immintrin.h>

#include <algorithm>

#include "synergy/kernels.hpp"

namespace synergy::kernels {
namespace {

// [m0, m0, m1, m1]
inline __m256d dup_pair(const double* m) {
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(m)), 0x50);
}

double combine(const double (&acc)[4]) { return (acc[0] + acc[1]) + (acc[2] + acc[3]); }

void scale(Complex* c, const double* m, std::size_t count) {
  auto* d = reinterpret_cast<double*>(c);
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    __m256d v = _mm256_loadu_pd(d + 2 * i);
    _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(v, dup_pair(m + i)));
  }
  for (; i < count; ++i) {
    d[2 * i] *= m[i];
    d[2 * i + 1] *= m[i];
  }
}

void scale_into(Complex* out, const Complex* in, const double* m, std::size_t count) {
  auto* o = reinterpret_cast<double*>(out);
  const auto* s = reinterpret_cast<const double*>(in);
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    __m256d v = _mm256_loadu_pd(s + 2 * i);
    _mm256_storeu_pd(o + 2 * i, _mm256_mul_pd(dup_pair(m + i), v));
  }
  for (; i < count; ++i) {
    o[2 * i] = m[i] * s[2 * i];
    o[2 * i + 1] = m[i] * s[2 * i + 1];
  }
}

void axpy(double* y, double a, const double* x, std::size_t count) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    __m256d xv = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(yv, _mm256_mul_pd(av, xv)));
  }
  for (; i < count; ++i) y[i] = y[i] + a * x[i];
}

void leray(Complex* cx, Complex* cy, Complex* cz, const double* kx, const double* ky,
           const double* kz, const double* inv_k2, std::size_t count) {
  auto* x = reinterpret_cast<double*>(cx);
  auto* y = reinterpret_cast<double*>(cy);
  auto* z = reinterpret_cast<double*>(cz);
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    const __m256d kxv = dup_pair(kx + i);
    const __m256d kyv = dup_pair(ky + i);
    const __m256d kzv = dup_pair(kz + i);
    const __m256d inv = dup_pair(inv_k2 + i);
    __m256d xv = _mm256_loadu_pd(x + 2 * i);
    __m256d yv = _mm256_loadu_pd(y + 2 * i);
    __m256d zv = _mm256_loadu_pd(z + 2 * i);
    __m256d dot = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(kxv, xv), _mm256_mul_pd(kyv, yv)),
                                _mm256_mul_pd(kzv, zv));
    __m256d f = _mm256_mul_pd(dot, inv);
    _mm256_storeu_pd(x + 2 * i, _mm256_sub_pd(xv, _mm256_mul_pd(kxv, f)));
    _mm256_storeu_pd(y + 2 * i, _mm256_sub_pd(yv, _mm256_mul_pd(kyv, f)));
    _mm256_storeu_pd(z + 2 * i, _mm256_sub_pd(zv, _mm256_mul_pd(kzv, f)));
  }
  for (; i < count; ++i) {
    for (std::size_t part = 0; part < 2; ++part) {
      const std::size_t j = 2 * i + part;
      const double dot = (kx[i] * x[j] + ky[i] * y[j]) + kz[i] * z[j];
      const double f = dot * inv_k2[i];
      x[j] = x[j] - kx[i] * f;
      y[j] = y[j] - ky[i] * f;
      z[j] = z[j] - kz[i] * f;
    }
  }
}

double weighted_norm2(const Complex* c, const double* w, std::size_t count) {
  const auto* d = reinterpret_cast<const double*>(c);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    __m256d v = _mm256_loadu_pd(d + 2 * i);
    __m256d sq = _mm256_mul_pd(v, v);
    if (w) sq = _mm256_mul_pd(dup_pair(w + i), sq);
    acc = _mm256_add_pd(acc, sq);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  for (std::size_t j = 2 * i; j < 2 * count; ++j) {
    const double sq = d[j] * d[j];
    lanes[j % 4] += w ? w[j / 2] * sq : sq;
  }
  return combine(lanes);
}

double dot(const double* a, const double* b, std::size_t count) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  for (; j < count; ++j) lanes[j % 4] += a[j] * b[j];
  return combine(lanes);
}

void advect(double* const out[3], const double* const u[3], const double* const grad[9],
            std::size_t count) {
  for (int c = 0; c < 3; ++c) {
    const double* g0 = grad[3 * c];
    const double* g1 = grad[3 * c + 1];
    const double* g2 = grad[3 * c + 2];
    double* o = out[c];
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
      __m256d t0 = _mm256_mul_pd(_mm256_loadu_pd(u[0] + i), _mm256_loadu_pd(g0 + i));
      __m256d t1 = _mm256_mul_pd(_mm256_loadu_pd(u[1] + i), _mm256_loadu_pd(g1 + i));
      __m256d t2 = _mm256_mul_pd(_mm256_loadu_pd(u[2] + i), _mm256_loadu_pd(g2 + i));
      _mm256_storeu_pd(o + i, _mm256_add_pd(_mm256_add_pd(t0, t1), t2));
    }
    for (; i < count; ++i) o[i] = (u[0][i] * g0[i] + u[1][i] * g1[i]) + u[2][i] * g2[i];
  }
}

double max_norm2(const double* x, const double* y, const double* z, std::size_t count) {
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256d xv = _mm256_loadu_pd(x + i);
    __m256d yv = _mm256_loadu_pd(y + i);
    __m256d zv = _mm256_loadu_pd(z + i);
    __m256d r = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(xv, xv), _mm256_mul_pd(yv, yv)),
                              _mm256_mul_pd(zv, zv));
    best = _mm256_max_pd(best, r);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double out = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < count; ++i) out = std::max(out, (x[i] * x[i] + y[i] * y[i]) + z[i] * z[i]);
  return out;
}

}  // namespace

const KernelTable* avx2_table_impl() {
  static const KernelTable table{"avx2", scale,  scale_into, axpy,     leray,
                                 weighted_norm2, dot, advect,     max_norm2};
  return &table;
}

}  // namespace synergy::kernels
