#pragma once

#include "synergy/field.hpp"

namespace synergy {

/// (sum_k (1 + |k|^2)^s |u_hat(k)|^2)^(1/2)
double sobolev_norm(const SpectralField& f, double s);
double l2_norm(const SpectralField& f);
/// Volume-normalised L2 inner product (2pi)^-3 int f.g dx.
double inner_product(const SpectralField& f, const SpectralField& g);

/// Multiplies every mode by I - k k^T / |k|^2; k = 0 is left alone.
SpectralField leray_project(const SpectralField& f);
SpectralField heat_semigroup(const SpectralField& f, double nu, double t);
/// Zeroes modes with any |k_axis| above the dealiasing cutoff.
SpectralField dealias(const SpectralField& f);

// Differential operators. Scalars live in component 0 of a SpectralField.
SpectralField derivative(const SpectralField& f, int axis);
SpectralField gradient(const SpectralField& scalar);
SpectralField divergence(const SpectralField& f);
SpectralField curl(const SpectralField& f);
SpectralField laplacian(const SpectralField& f);

/// ||div f||_L2 / ||grad f||_L2, zero for constant fields.
double divergence_defect(const SpectralField& f);

/// Dealiased (a.grad) b, computed pseudospectrally.
SpectralField advection(const SpectralField& a, const SpectralField& b);

struct AdvectionResult {
  SpectralField term;
  double max_speed;  // lattice max of |a|
};
AdvectionResult advection_with_speed(const SpectralField& a, const SpectralField& b);

/// P[(u.grad)u], dealiased. Throws NotSolenoidal if the flag is unset and the
/// divergence defect exceeds 1e-9.
SpectralField nonlinear_term(const SpectralField& u);

void require_solenoidal(const SpectralField& u, const char* where);

/// Lattice max of |u| (vector magnitude).
double max_abs(const SpectralField& u);

/// Relative gap between lattice-mean |u|^2 and sum |u_hat|^2.
double parseval_defect(const SpectralField& u);

}  // namespace synergy
