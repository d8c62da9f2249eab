#pragma once

#include <vector>

#include "ffbt/finite_fourier.hpp"
#include "ffbt/oracle.hpp"
#include "ffbt/transform.hpp"

namespace ffbt {

/// C^K_{m,n}[f,g] = delta^4 tr(Qx (F^ . G^)), the Fourier-Bessel coefficient of
/// f*g computed from the factors alone. Both fields must share the 2K+1 grid.
/// Warns when a factor has non-negligible samples outside the disk of radius
/// 1/2 (+ one grid step).
cplx ffbt_conv(const SampledField& f, const SampledField& g, HarmonicIndex idx, int K);

Spectrum ffbt_conv_block(const SampledField& f, const SampledField& g, int M, int N, int K);

/// Trace-form synthesis of f*g: Kx(x, y) = sum P(x, y)_{m,n} Qx_{m,n}.
class ConvolutionKernel {
 public:
  ConvolutionKernel(int M, int N, int K) : kernel_(M, N, K, KernelKind::cross) {}

  ComplexMatrix kmat(Point p) const { return kernel_.kmat(p); }
  cplx evaluate(Point p, const ComplexMatrix& product) const { return kernel_.evaluate(p, product); }

 private:
  SynthesisKernel kernel_;
};

/// S^K_{M,N}[f,g] at each point, evaluated at p / a with a the fields' half
/// width.
std::vector<cplx> iffbt_conv(const SampledField& f, const SampledField& g, int M, int N, int K,
                             const std::vector<Point>& points, SynthesisOptions options = {});

struct ScaledConvolution {
  std::vector<cplx> values;  // S^K_{M,N}[f~, g~](x / a), f~(x) = f(a x)
  double a = 1.0;
  // (f*g)(x) = jacobian * (f~*g~)(x / a); multiply values by it for physical units.
  double jacobian = 1.0;
};

/// f, g supported in the disk of radius a/2.
ScaledConvolution conv_scaled(const Function2D& f, const Function2D& g, double a, int M, int N, int K,
                              const std::vector<Point>& points, SynthesisOptions options = {});

/// |(f*g)^(k; 2K+1) - f^(k; 2K+1) g^(k; 2K+1)| with the convolution samples
/// taken from the quadrature oracle. Throws OutOfRegimeError for |k|_inf > K.
double fft_product_error(const SupportedFunction& f, const SupportedFunction& g, FrequencyIndex k, int K,
                         const QuadratureSpec& q = {});

/// Samples of f*g on the 2K+1 grid from the quadrature oracle.
SampledField sample_direct_convolution(const SupportedFunction& f, const SupportedFunction& g, int side,
                                       const QuadratureSpec& q = {});

}  // namespace ffbt
