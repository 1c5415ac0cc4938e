#include "synergy/spectral_ops.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "synergy/error.hpp"
#include "synergy/kernels.hpp"
#include "synergy/transform.hpp"

namespace synergy {
namespace {

const double* raw(std::span<const Complex> c) { return reinterpret_cast<const double*>(c.data()); }

// out = i * k * in
void times_ik(std::span<const Complex> in, const std::vector<double>& k, std::span<Complex> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = Complex(-in[i].imag() * k[i], in[i].real() * k[i]);
}

double weighted_sum(const SpectralField& f, const double* w) {
  const auto& kern = kernels::active();
  double total = 0.0;
  for (int c = 0; c < 3; ++c) total += kern.weighted_norm2(f.component(c).data(), w, f.size());
  return total;
}

}  // namespace

double sobolev_norm(const SpectralField& f, double s) {
  if (s == 0.0) return std::sqrt(weighted_sum(f, nullptr));
  const auto table = WaveTable::get(f.grid());
  std::vector<double> w(f.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::pow(1.0 + table->k2[i], s);
  return std::sqrt(weighted_sum(f, w.data()));
}

double l2_norm(const SpectralField& f) { return sobolev_norm(f, 0.0); }

double inner_product(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid())) throw Error(ErrorCode::GridMismatch, "inner_product");
  const auto& kern = kernels::active();
  double total = 0.0;
  for (int c = 0; c < 3; ++c) {
    total += kern.dot(raw(f.component(c)), raw(g.component(c)), 2 * f.size());
  }
  return total;
}

SpectralField leray_project(const SpectralField& f) {
  SpectralField out = f;
  const auto table = WaveTable::get(f.grid());
  kernels::active().leray(out.component(0).data(), out.component(1).data(), out.component(2).data(),
                          table->k_eff[0].data(), table->k_eff[1].data(), table->k_eff[2].data(),
                          table->inv_k2_eff.data(), out.size());
  out.set_solenoidal(true);
  return out;
}

SpectralField heat_semigroup(const SpectralField& f, double nu, double t) {
  if (!(nu >= 0.0) || !(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "heat_semigroup needs nu, t >= 0");
  const auto table = WaveTable::get(f.grid());
  std::vector<double> m(f.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::exp(-nu * t * table->k2[i]);
  SpectralField out = f;
  for (int c = 0; c < 3; ++c) kernels::active().scale(out.component(c).data(), m.data(), out.size());
  return out;
}

SpectralField dealias(const SpectralField& f) {
  const auto table = WaveTable::get(f.grid());
  SpectralField out = f;
  for (int c = 0; c < 3; ++c) {
    kernels::active().scale(out.component(c).data(), table->dealias_mask.data(), out.size());
  }
  return out;
}

SpectralField derivative(const SpectralField& f, int axis) {
  if (axis < 0 || axis > 2) throw Error(ErrorCode::IndexOutOfRange, "axis must be 0, 1 or 2");
  const auto table = WaveTable::get(f.grid());
  SpectralField out(f.grid());
  for (int c = 0; c < 3; ++c) times_ik(f.component(c), table->k_eff[axis], out.component(c));
  out.set_time(f.time());
  out.set_solenoidal(f.solenoidal());
  out.set_mean_free(true);
  return out;
}

SpectralField gradient(const SpectralField& scalar) {
  const auto table = WaveTable::get(scalar.grid());
  SpectralField out(scalar.grid());
  for (int a = 0; a < 3; ++a) times_ik(scalar.component(0), table->k_eff[a], out.component(a));
  out.set_time(scalar.time());
  out.set_mean_free(true);
  return out;
}

SpectralField divergence(const SpectralField& f) {
  const auto table = WaveTable::get(f.grid());
  SpectralField out(f.grid());
  auto d = out.component(0);
  for (int a = 0; a < 3; ++a) {
    const auto in = f.component(a);
    const auto& k = table->k_eff[a];
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += Complex(-in[i].imag() * k[i], in[i].real() * k[i]);
  }
  out.set_time(f.time());
  out.set_mean_free(true);
  return out;
}

SpectralField curl(const SpectralField& f) {
  const auto table = WaveTable::get(f.grid());
  SpectralField out(f.grid());
  const auto& k = table->k_eff;
  for (int c = 0; c < 3; ++c) {
    const int a = (c + 1) % 3;
    const int b = (c + 2) % 3;
    // (curl f)_c = d_a f_b - d_b f_a
    const auto fa = f.component(a);
    const auto fb = f.component(b);
    auto o = out.component(c);
    for (std::size_t i = 0; i < o.size(); ++i) {
      const Complex v = k[a][i] * fb[i] - k[b][i] * fa[i];
      o[i] = Complex(-v.imag(), v.real());
    }
  }
  out.set_time(f.time());
  out.set_solenoidal(true);
  out.set_mean_free(true);
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  const auto table = WaveTable::get(f.grid());
  std::vector<double> m(f.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = -table->k2[i];
  SpectralField out = f;
  for (int c = 0; c < 3; ++c) kernels::active().scale(out.component(c).data(), m.data(), out.size());
  out.set_mean_free(true);
  return out;
}

double divergence_defect(const SpectralField& f) {
  const auto table = WaveTable::get(f.grid());
  const double grad = std::sqrt(weighted_sum(f, table->k2.data()));
  if (grad == 0.0) return 0.0;
  const SpectralField d = divergence(f);
  const double div = std::sqrt(kernels::active().weighted_norm2(d.component(0).data(), nullptr, d.size()));
  return div / grad;
}

AdvectionResult advection_with_speed(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw Error(ErrorCode::GridMismatch, "advection");
  const GridSpec& grid = a.grid();
  const auto table = WaveTable::get(grid);
  const std::size_t size = grid.size();
  const auto& kern = kernels::active();

  std::array<std::vector<double>, 3> velocity;
  std::array<std::vector<double>, 9> grad;
  std::array<std::vector<Complex>, 9> grad_hat;
  std::vector<std::span<const Complex>> coeffs;
  std::vector<std::span<double>> samples;
  for (int c = 0; c < 3; ++c) {
    velocity[c].resize(size);
    coeffs.push_back(a.component(c));
    samples.push_back(velocity[c]);
  }
  for (int c = 0; c < 3; ++c) {
    for (int j = 0; j < 3; ++j) {
      auto& work = grad_hat[3 * c + j];
      work.resize(size);
      times_ik(b.component(c), table->k_eff[j], work);
      grad[3 * c + j].resize(size);
      coeffs.push_back(work);
      samples.push_back(grad[3 * c + j]);
    }
  }
  detail::to_physical_batch(grid, coeffs, samples);

  std::array<std::vector<double>, 3> product;
  for (auto& p : product) p.resize(size);
  const double* u_ptr[3] = {velocity[0].data(), velocity[1].data(), velocity[2].data()};
  const double* g_ptr[9];
  for (int i = 0; i < 9; ++i) g_ptr[i] = grad[i].data();
  double* o_ptr[3] = {product[0].data(), product[1].data(), product[2].data()};
  kern.advect(o_ptr, u_ptr, g_ptr, size);

  AdvectionResult result{SpectralField(grid), 0.0};
  const std::array<std::span<const double>, 3> phys{product[0], product[1], product[2]};
  const std::array<std::span<Complex>, 3> coeffs_out{result.term.component(0), result.term.component(1),
                                                    result.term.component(2)};
  detail::to_spectral_batch(grid, phys, coeffs_out);
  for (int c = 0; c < 3; ++c) kern.scale(coeffs_out[c].data(), table->dealias_mask.data(), size);
  result.term.set_time(b.time());
  result.max_speed = std::sqrt(kern.max_norm2(u_ptr[0], u_ptr[1], u_ptr[2], size));
  return result;
}

SpectralField advection(const SpectralField& a, const SpectralField& b) {
  return advection_with_speed(a, b).term;
}

void require_solenoidal(const SpectralField& u, const char* where) {
  if (u.solenoidal()) return;
  const double defect = divergence_defect(u);
  if (defect > 1e-9) {
    throw Error(ErrorCode::NotSolenoidal,
                std::string(where) + ": divergence defect " + std::to_string(defect));
  }
}

SpectralField nonlinear_term(const SpectralField& u) {
  require_solenoidal(u, "nonlinear_term");
  SpectralField out = leray_project(advection(u, u));
  out.remove_mean();
  return out;
}

double max_abs(const SpectralField& u) {
  const GridSpec& grid = u.grid();
  std::array<std::vector<double>, 3> v;
  for (auto& c : v) c.resize(grid.size());
  const std::array<std::span<const Complex>, 3> coeffs{u.component(0), u.component(1), u.component(2)};
  const std::array<std::span<double>, 3> samples{v[0], v[1], v[2]};
  detail::to_physical_batch(grid, coeffs, samples);
  return std::sqrt(kernels::active().max_norm2(v[0].data(), v[1].data(), v[2].data(), grid.size()));
}

double parseval_defect(const SpectralField& u) {
  const PhysicalField phys = inverse_transform(u);
  const auto& kern = kernels::active();
  double physical = 0.0;
  for (int c = 0; c < 3; ++c) {
    const auto comp = phys.component(c);
    physical += kern.dot(comp.data(), comp.data(), comp.size());
  }
  physical /= static_cast<double>(u.size());
  const double spectral = weighted_sum(u, nullptr);
  if (spectral == 0.0) return physical == 0.0 ? 0.0 : 1.0;
  return std::abs(physical - spectral) / spectral;
}

}  // namespace synergy
