#pragma once

#include <span>
#include <vector>

#include "synergy/field.hpp"

namespace synergy {

/// Coefficients with u(x) = sum_k u_hat(k) exp(i k.x); Hermitian by construction.
SpectralField forward_transform(const PhysicalField& f);

/// Throws SymmetryViolation when the Hermitian defect exceeds 1e-9 relative
/// to the largest coefficient.
PhysicalField inverse_transform(const SpectralField& f);

namespace detail {

// Unchecked single-component transforms used by the pseudospectral products.
void to_physical(const GridSpec& grid, std::span<const Complex> coeffs, std::span<double> out);
void to_spectral(const GridSpec& grid, std::span<const double> samples, std::span<Complex> out);

// Batched variants packing two real fields into one complex transform. The
// coefficient arrays must be Hermitian.
void to_physical_batch(const GridSpec& grid, std::span<const std::span<const Complex>> coeffs,
                       std::span<const std::span<double>> out);
void to_spectral_batch(const GridSpec& grid, std::span<const std::span<const double>> samples,
                       std::span<const std::span<Complex>> out);

}  // namespace detail
}  // namespace synergy
