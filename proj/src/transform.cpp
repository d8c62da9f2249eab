#include "ffbt/transform.hpp"

#include <cmath>
#include <string>

#include "ffbt/error.hpp"
#include "ffbt/finite_fourier.hpp"
#include "ffbt/parallel.hpp"

namespace ffbt {

namespace {

void require_grid(const SampledField& field, int K) {
  if (K < 1) throw InvalidArgument("transform order K must be >= 1");
  if (field.side() != 2 * K + 1)
    throw GridMismatchError("field has L=" + std::to_string(field.side()) + " but K=" + std::to_string(K) +
                            " needs L=" + std::to_string(2 * K + 1));
}

void require_block(int M, int N) {
  if (M < 0 || N < 1) throw InvalidArgument("block requires M >= 0 and N >= 1");
}

double parity(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

Spectrum::Spectrum(int M_, int N_, int K_, double a_) : M(M_), N(N_), K(K_), a(a_) {
  require_block(M, N);
  if (!(a > 0.0)) throw InvalidArgument("spectrum radius must be positive");
  coeffs.assign(std::size_t(2 * M + 1) * std::size_t(N), cplx{});
}

cplx& Spectrum::at(int m, int n) {
  if (std::abs(m) > M || n < 1 || n > N) throw InvalidArgument("mode outside spectrum block");
  return coeffs[block_offset(m, n, M, N)];
}

const cplx& Spectrum::at(int m, int n) const { return const_cast<Spectrum*>(this)->at(m, n); }

cplx ffbt(const SampledField& field, HarmonicIndex idx, int K) {
  require_grid(field, K);
  const auto kernel = KernelCache::global().get(idx, K);
  const double d = field.grid().delta();
  return d * d * trace_of_product(kernel->q, field.dft());
}

Spectrum ffbt_block(const SampledField& field, int M, int N, int K) {
  require_grid(field, K);
  require_block(M, N);
  const int threshold = k_min_block(M, N);
  if (K < threshold)
    warn("K=" + std::to_string(K) + " is below K[M,N]=" + std::to_string(threshold) +
         "; error bounds do not apply");
  Spectrum spec(M, N, K, field.half_width());
  const ComplexMatrix& F = field.dft();
  const double d2 = field.grid().delta() * field.grid().delta();
  const bool real = field.is_real();
  const int m_lo = real ? 0 : -M;
  const std::size_t rows = std::size_t(M - m_lo + 1);
  parallel_for(rows * std::size_t(N), [&](std::size_t t) {
    const int m = m_lo + int(t / std::size_t(N));
    const int n = int(t % std::size_t(N)) + 1;
    const auto kernel = KernelCache::global().get({m, n}, K);
    spec.coeffs[block_offset(m, n, M, N)] = d2 * trace_of_product(kernel->q, F);
  });
  if (real)
    for (int m = 1; m <= M; ++m)
      for (int n = 1; n <= N; ++n) spec.at(-m, n) = parity(m) * std::conj(spec.at(m, n));
  return spec;
}

ComplexMatrix harmonic_table(int M, int N, Point p) {
  require_block(M, N);
  ComplexMatrix P(2 * M + 1, N);
  const double r = std::hypot(p.x, p.y);
  if (r > 1.0) return P;
  const double theta = std::atan2(p.y, p.x);
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  for (int m = 0; m <= M; ++m) {
    for (int n = 1; n <= N; ++n) {
      const double radial = normalized_radial({m, n}, r) * inv_sqrt_2pi;
      const cplx e = std::polar(1.0, m * theta);
      P(m + M, n - 1) = radial * e;
      // Psi_{-m,n} = (-1)^m conj(Psi_{m,n})
      if (m > 0) P(M - m, n - 1) = parity(m) * radial * std::conj(e);
    }
  }
  return P;
}

std::vector<cplx> iffbt(const Spectrum& spec, const std::vector<Point>& points) {
  std::vector<cplx> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) { out[i] = iffbt(spec, points[i]); });
  return out;
}

cplx iffbt(const Spectrum& spec, Point p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidArgument("non-finite evaluation point");
  if (std::hypot(p.x, p.y) > spec.a) return {0.0, 0.0};
  const ComplexMatrix P = harmonic_table(spec.M, spec.N, {p.x / spec.a, p.y / spec.a});
  cplx s{};
  for (int m = -spec.M; m <= spec.M; ++m)
    for (int n = 1; n <= spec.N; ++n) s += spec.coeffs[block_offset(m, n, spec.M, spec.N)] * P(m + spec.M, n - 1);
  return s;
}

SynthesisKernel::SynthesisKernel(int M, int N, int K, KernelKind kind) : M_(M), N_(N), K_(K), kind_(kind) {
  require_block(M, N);
  if (K < 1) throw InvalidArgument("transform order K must be >= 1");
  h_.resize(std::size_t(2 * M + 1) * std::size_t(N));
  parallel_for(h_.size(), [&](std::size_t t) {
    const int m = int(t / std::size_t(N)) - M;
    const int n = int(t % std::size_t(N)) + 1;
    h_[t] = KernelCache::global().get({m, n}, K);
  });
}

ComplexMatrix SynthesisKernel::kmat(Point p) const {
  const int side = 2 * K_ + 1;
  ComplexMatrix out(side, side);
  const ComplexMatrix P = harmonic_table(M_, N_, p);
  for (int m = -M_; m <= M_; ++m) {
    for (int n = 1; n <= N_; ++n) {
      const cplx w = P(m + M_, n - 1);
      if (w == cplx{}) continue;
      const auto& q = h_[block_offset(m, n, M_, N_)]->matrix(kind_);
      for (std::size_t e = 0; e < out.size(); ++e) out.data()[e] += w * q.data()[e];
    }
  }
  return out;
}

cplx SynthesisKernel::evaluate(Point p, const ComplexMatrix& spectrum_matrix) const {
  const int side = 2 * K_ + 1;
  if (spectrum_matrix.rows() != std::size_t(side) || spectrum_matrix.cols() != std::size_t(side))
    throw GridMismatchError("spectrum matrix does not match the kernel order");
  if (std::hypot(p.x, p.y) > 1.0) return {0.0, 0.0};
  const double d = 2.0 / side;
  const double scale = kind_ == KernelKind::plain ? d * d : d * d * d * d;
  return scale * trace_of_product(kmat(p), spectrum_matrix);
}

cplx iffbt_trace(const SampledField& field, int M, int N, int K, Point p) {
  require_grid(field, K);
  const double a = field.half_width();
  if (std::hypot(p.x, p.y) > a) return {0.0, 0.0};
  return SynthesisKernel(M, N, K).evaluate({p.x / a, p.y / a}, field.dft());
}

std::vector<cplx> synthesize(const SampledField& field, int M, int N, int K, const std::vector<Point>& points,
                             SynthesisOptions options) {
  require_grid(field, K);
  bool trace = options.path == SynthesisPath::trace;
  if (options.path == SynthesisPath::automatic) trace = points.size() > options.crossover;
  if (!trace) return iffbt(ffbt_block(field, M, N, K), points);

  const SynthesisKernel kernel(M, N, K);
  const double a = field.half_width();
  const ComplexMatrix& F = field.dft();
  std::vector<cplx> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const Point p = points[i];
    out[i] = std::hypot(p.x, p.y) > a ? cplx{} : kernel.evaluate({p.x / a, p.y / a}, F);
  });
  return out;
}

Spectrum analyze_scaled(const Function2D& f, double a, int M, int N, int K) {
  if (K < 1) throw InvalidArgument("transform order K must be >= 1");
  return ffbt_block(sample_scaled(f, a, 2 * K + 1), M, N, K);
}

Function2D rotate(const Function2D& f, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return [f, c, s](double x, double y) { return f(x * c - y * s, x * s + y * c); };
}

double steer_residual(const Function2D& f, HarmonicIndex idx, int K, double phi) {
  if (K < 1) throw InvalidArgument("transform order K must be >= 1");
  const int side = 2 * K + 1;
  const cplx base = ffbt(sample(f, side), idx, K);
  const cplx turned = ffbt(sample(rotate(f, phi), side), idx, K);
  return std::abs(turned - std::polar(1.0, idx.m * phi) * base);
}

std::vector<Point> evaluation_grid(int side, double a) {
  const Grid grid(side);
  std::vector<Point> pts;
  pts.reserve(std::size_t(side) * std::size_t(side));
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) pts.push_back({a * grid.node(i), a * grid.node(j)});
  return pts;
}

}  // namespace ffbt
