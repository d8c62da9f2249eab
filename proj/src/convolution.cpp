#include "ffbt/convolution.hpp"

#include <cmath>
#include <string>

#include "ffbt/error.hpp"
#include "ffbt/parallel.hpp"

namespace ffbt {

namespace {

void require_pair(const SampledField& f, const SampledField& g, int K) {
  if (K < 1) throw InvalidArgument("transform order K must be >= 1");
  if (f.side() != g.side()) throw GridMismatchError("convolution factors live on different grids");
  if (f.half_width() != g.half_width()) throw GridMismatchError("convolution factors have different half widths");
  if (f.side() != 2 * K + 1)
    throw GridMismatchError("field has L=" + std::to_string(f.side()) + " but K=" + std::to_string(K) +
                            " needs L=" + std::to_string(2 * K + 1));
}

void check_support(const SampledField& field, const char* name) {
  const auto& x = field.grid().nodes();
  const double limit = 0.5 + field.grid().delta();
  for (int i = 0; i < field.side(); ++i) {
    for (int j = 0; j < field.side(); ++j) {
      if (std::hypot(x[i], x[j]) > limit && std::abs(field(i, j)) > 1e-12) {
        warn(std::string("convolution factor ") + name + " is not supported in the disk of radius 1/2");
        return;
      }
    }
  }
}

ComplexMatrix checked_product(const SampledField& f, const SampledField& g) {
  check_support(f, "f");
  check_support(g, "g");
  return hadamard(f.dft(), g.dft());
}

}  // namespace

cplx ffbt_conv(const SampledField& f, const SampledField& g, HarmonicIndex idx, int K) {
  require_pair(f, g, K);
  const auto kernel = KernelCache::global().get(idx, K);
  const double d2 = f.grid().delta() * f.grid().delta();
  return d2 * d2 * trace_of_product(kernel->q_cross, checked_product(f, g));
}

Spectrum ffbt_conv_block(const SampledField& f, const SampledField& g, int M, int N, int K) {
  require_pair(f, g, K);
  Spectrum spec(M, N, K, f.half_width());
  const int threshold = k_min_block(M, N);
  if (K < threshold)
    warn("K=" + std::to_string(K) + " is below K[M,N]=" + std::to_string(threshold) +
         "; error bounds do not apply");
  const ComplexMatrix S = checked_product(f, g);
  const double d2 = f.grid().delta() * f.grid().delta();
  parallel_for(spec.size(), [&](std::size_t t) {
    const int m = int(t / std::size_t(N)) - M;
    const int n = int(t % std::size_t(N)) + 1;
    spec.coeffs[t] = d2 * d2 * trace_of_product(KernelCache::global().get({m, n}, K)->q_cross, S);
  });
  return spec;
}

std::vector<cplx> iffbt_conv(const SampledField& f, const SampledField& g, int M, int N, int K,
                             const std::vector<Point>& points, SynthesisOptions options) {
  require_pair(f, g, K);
  bool trace = options.path == SynthesisPath::trace;
  if (options.path == SynthesisPath::automatic) trace = points.size() > options.crossover;
  if (!trace) return iffbt(ffbt_conv_block(f, g, M, N, K), points);

  const ConvolutionKernel kernel(M, N, K);
  const ComplexMatrix S = checked_product(f, g);
  const double a = f.half_width();
  std::vector<cplx> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const Point p = points[i];
    out[i] = std::hypot(p.x, p.y) > a ? cplx{} : kernel.evaluate({p.x / a, p.y / a}, S);
  });
  return out;
}

ScaledConvolution conv_scaled(const Function2D& f, const Function2D& g, double a, int M, int N, int K,
                              const std::vector<Point>& points, SynthesisOptions options) {
  if (K < 1) throw InvalidArgument("transform order K must be >= 1");
  const int side = 2 * K + 1;
  ScaledConvolution out;
  out.values = iffbt_conv(sample_scaled(f, a, side), sample_scaled(g, a, side), M, N, K, points, options);
  out.a = a;
  out.jacobian = a * a;
  return out;
}

SampledField sample_direct_convolution(const SupportedFunction& f, const SupportedFunction& g, int side,
                                       const QuadratureSpec& q) {
  Grid grid(side);
  ComplexMatrix values(side, side);
  const auto& x = grid.nodes();
  parallel_for(std::size_t(side) * std::size_t(side), [&](std::size_t t) {
    const int i = int(t / std::size_t(side));
    const int j = int(t % std::size_t(side));
    values(i, j) = direct_convolution(f, g, {x[i], x[j]}, q);
  });
  return SampledField(std::move(grid), std::move(values));
}

double fft_product_error(const SupportedFunction& f, const SupportedFunction& g, FrequencyIndex k, int K,
                         const QuadratureSpec& q) {
  if (K < 1) throw InvalidArgument("transform order K must be >= 1");
  if (k.sup_norm() > K)
    throw OutOfRegimeError("|k|_inf=" + std::to_string(k.sup_norm()) + " exceeds K=" + std::to_string(K));
  const int side = 2 * K + 1;
  const SampledField fg = sample_direct_convolution(f, g, side, q);
  const cplx left = finite_fourier_disk(fg, k);
  const cplx right = finite_fourier_disk(sample(f.f, side), k) * finite_fourier_disk(sample(g.f, side), k);
  return std::abs(left - right);
}

}  // namespace ffbt
