#include "synergy/kernels.hpp"

#include <algorithm>

namespace synergy::kernels {
namespace {

void scale(Complex* c, const double* m, std::size_t count) {
  auto* d = reinterpret_cast<double*>(c);
  for (std::size_t i = 0; i < count; ++i) {
    d[2 * i] *= m[i];
    d[2 * i + 1] *= m[i];
  }
}

void scale_into(Complex* out, const Complex* in, const double* m, std::size_t count) {
  auto* o = reinterpret_cast<double*>(out);
  const auto* s = reinterpret_cast<const double*>(in);
  for (std::size_t i = 0; i < count; ++i) {
    o[2 * i] = m[i] * s[2 * i];
    o[2 * i + 1] = m[i] * s[2 * i + 1];
  }
}

void axpy(double* y, double a, const double* x, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) y[i] = y[i] + a * x[i];
}

void leray(Complex* cx, Complex* cy, Complex* cz, const double* kx, const double* ky,
           const double* kz, const double* inv_k2, std::size_t count) {
  auto* x = reinterpret_cast<double*>(cx);
  auto* y = reinterpret_cast<double*>(cy);
  auto* z = reinterpret_cast<double*>(cz);
  for (std::size_t i = 0; i < count; ++i) {
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

double combine(const double (&acc)[4]) { return (acc[0] + acc[1]) + (acc[2] + acc[3]); }

double weighted_norm2(const Complex* c, const double* w, std::size_t count) {
  const auto* d = reinterpret_cast<const double*>(c);
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t total = 2 * count;
  for (std::size_t j = 0; j < total; ++j) {
    const double sq = d[j] * d[j];
    acc[j % 4] += w ? w[j / 2] * sq : sq;
  }
  return combine(acc);
}

double dot(const double* a, const double* b, std::size_t count) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t j = 0; j < count; ++j) acc[j % 4] += a[j] * b[j];
  return combine(acc);
}

void advect(double* const out[3], const double* const u[3], const double* const grad[9],
            std::size_t count) {
  for (int c = 0; c < 3; ++c) {
    const double* g0 = grad[3 * c];
    const double* g1 = grad[3 * c + 1];
    const double* g2 = grad[3 * c + 2];
    double* o = out[c];
    for (std::size_t i = 0; i < count; ++i) {
      o[i] = (u[0][i] * g0[i] + u[1][i] * g1[i]) + u[2][i] * g2[i];
    }
  }
}

double max_norm2(const double* x, const double* y, const double* z, std::size_t count) {
  double best = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    best = std::max(best, (x[i] * x[i] + y[i] * y[i]) + z[i] * z[i]);
  }
  return best;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", scale,  scale_into, axpy,     leray,
                                 weighted_norm2, dot, advect,     max_norm2};
  return table;
}

}  // namespace synergy::kernels
