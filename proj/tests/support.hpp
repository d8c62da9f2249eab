#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "ffbt/coefficients.hpp"
#include "ffbt/finite_fourier.hpp"
#include "ffbt/matrix.hpp"
#include "ffbt/sampling.hpp"

namespace testing_support {

using ffbt::ComplexMatrix;
using ffbt::cplx;

inline ComplexMatrix random_matrix(int side, std::mt19937_64& rng, bool real = false) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(side, side);
  for (auto& v : m.values()) v = cplx(u(rng), real ? 0.0 : u(rng));
  return m;
}

inline ffbt::SampledField random_field(int side, std::mt19937_64& rng, bool real = false) {
  return ffbt::SampledField(ffbt::Grid(side), random_matrix(side, rng, real));
}

// O(L^4) definition of the unnormalized DFT.
inline ComplexMatrix brute_dft(const ComplexMatrix& a) {
  const int L = int(a.rows());
  ComplexMatrix out(L, L);
  for (int l = 0; l < L; ++l)
    for (int p = 0; p < L; ++p) {
      cplx s{};
      for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
          s += a(i, j) * std::polar(1.0, -2.0 * std::numbers::pi * double((i * l + j * p) % L) / L);
      out(l, p) = s;
    }
  return out;
}

// delta^2 sum f(x_i, x_j) exp(-pi i (k1 x_i + k2 x_j)) straight from the samples.
inline cplx brute_finite_fourier(const ffbt::SampledField& f, int k1, int k2) {
  const auto& x = f.grid().nodes();
  const double d = f.grid().delta();
  cplx s{};
  for (int i = 0; i < f.side(); ++i)
    for (int j = 0; j < f.side(); ++j) s += f(i, j) * std::polar(1.0, -std::numbers::pi * (k1 * x[i] + k2 * x[j]));
  return d * d * s;
}

// sum_{|k|_inf <= K} c(k; m, n) f^(k; 2K+1) without any folding.
inline cplx raw_ffbt(const ffbt::SampledField& f, ffbt::HarmonicIndex idx, int K) {
  cplx s{};
  for (int k1 = -K; k1 <= K; ++k1)
    for (int k2 = -K; k2 <= K; ++k2) s += ffbt::coeff_c({k1, k2}, idx) * brute_finite_fourier(f, k1, k2);
  return s;
}

inline cplx raw_ffbt_conv(const ffbt::SampledField& f, const ffbt::SampledField& g, ffbt::HarmonicIndex idx, int K) {
  cplx s{};
  for (int k1 = -K; k1 <= K; ++k1)
    for (int k2 = -K; k2 <= K; ++k2)
      s += ffbt::coeff_c({k1, k2}, idx) * brute_finite_fourier(f, k1, k2) * brute_finite_fourier(g, k1, k2);
  return s;
}

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace testing_support
