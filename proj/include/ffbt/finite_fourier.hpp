#pragma once

#include <functional>

#include "ffbt/matrix.hpp"
#include "ffbt/sampling.hpp"

namespace ffbt {

// Integer frequency k = (k1, k2).
struct FrequencyIndex {
  int k1 = 0;
  int k2 = 0;

  int sup_norm() const;
  double norm() const;
  auto operator<=>(const FrequencyIndex&) const = default;
};

/// Unnormalized forward 2D DFT:
///   out(l, p) = sum_{i,j} a(i, j) exp(-2 pi i (i l + j p) / L).
/// Throws InvalidArgument for non-square input.
ComplexMatrix dft2(const ComplexMatrix& a);

/// kappa mod L mapped into [0, L-1].
int fold_index(int kappa, int side);

/// delta^2 sum_{i,j} f(x_i, x_j) exp(-pi i (k1 x_i + k2 x_j)), read off the
/// field's DFT as delta^2 (-1)^{k1+k2} F^(fold(k1), fold(k2)).
cplx finite_fourier_disk(const SampledField& field, FrequencyIndex k);

/// (1/L) sum_i u(x_i) exp(-pi i k x_i), the left Riemann sum of
/// (1/2) int_{-1}^{1} u(x) exp(-pi i k x) dx.
cplx finite_fourier_coeff_1d(const std::function<cplx(double)>& u, int k, int side);

/// (1/L^2) sum_{i,j} U(x_i, x_j) exp(-pi i (k1 x_i + k2 x_j)).
cplx finite_fourier_coeff_2d(const Function2D& u, FrequencyIndex k, int side);

}  // namespace ffbt
