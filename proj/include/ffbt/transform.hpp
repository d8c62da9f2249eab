#pragma once

#include <memory>
#include <vector>

#include "ffbt/coefficients.hpp"
#include "ffbt/sampling.hpp"
#include "ffbt/special_functions.hpp"

namespace ffbt {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Coefficients C^K_{m,n} for |m| <= M, 1 <= n <= N of a function supported in
// the disk of radius a, stored at block_offset(m, n, M, N).
struct Spectrum {
  int M = 0;
  int N = 1;
  int K = 0;
  double a = 1.0;
  std::vector<cplx> coeffs;

  Spectrum() = default;
  Spectrum(int M, int N, int K, double a = 1.0);

  std::size_t size() const { return coeffs.size(); }
  cplx& at(int m, int n);
  const cplx& at(int m, int n) const;
};

/// C^K_{m,n}(f) = delta^2 tr(Q F^). Requires field.side() == 2K+1.
cplx ffbt(const SampledField& field, HarmonicIndex idx, int K);

/// Every mode of the (M, N) block from one DFT. Warns when K < K[M,N]. For
/// real fields only m >= 0 is computed; C_{-m,n} = (-1)^m conj(C_{m,n}).
Spectrum ffbt_block(const SampledField& field, int M, int N, int K);

/// sum C_{m,n} Psi_{m,n}(x/a, y/a); exactly 0 for |(x, y)| > a.
std::vector<cplx> iffbt(const Spectrum& spec, const std::vector<Point>& points);
cplx iffbt(const Spectrum& spec, Point p);

/// P(x, y): (2M+1) x N table of Psi_{m,n}(x, y), row m + M, column n - 1.
ComplexMatrix harmonic_table(int M, int N, Point p);

/// Trace-form synthesis. Holds the kernels Q_{m,n} (or Qx_{m,n}) of a block,
/// i.e. the four-index table H(l, p, m, n), and contracts them with P(x, y):
///   Kmat(x, y) = sum_{m,n} P(x, y)_{m,n} Q_{m,n}.
class SynthesisKernel {
 public:
  SynthesisKernel(int M, int N, int K, KernelKind kind = KernelKind::plain);

  int M() const { return M_; }
  int N() const { return N_; }
  int K() const { return K_; }
  KernelKind kind() const { return kind_; }

  ComplexMatrix kmat(Point p) const;

  // delta^2 tr(Kmat F^) for the plain kind, delta^4 tr(Kmat S) for the cross
  // kind where S = F^ . G^ is passed in.
  cplx evaluate(Point p, const ComplexMatrix& spectrum_matrix) const;

 private:
  int M_, N_, K_;
  KernelKind kind_;
  std::vector<std::shared_ptr<const CoefficientKernel>> h_;
};

cplx iffbt_trace(const SampledField& field, int M, int N, int K, Point p);

enum class SynthesisPath { automatic, two_stage, trace };

struct SynthesisOptions {
  SynthesisPath path = SynthesisPath::automatic;
  std::size_t crossover = 64;  // automatic: trace form above this many points
};

/// S^K_{M,N}(f) at each point, in the unit disk coordinates of the field
/// scaled by its half width.
std::vector<cplx> synthesize(const SampledField& field, int M, int N, int K, const std::vector<Point>& points,
                             SynthesisOptions options = {});

/// Spectrum of f~(x) = f(a x); synthesis of the result evaluates at x / a.
Spectrum analyze_scaled(const Function2D& f, double a, int M, int N, int K);

/// f rotated by phi: (R_phi f)(x, y) = f(x cos phi - y sin phi, x sin phi + y cos phi).
Function2D rotate(const Function2D& f, double phi);

/// |C^K_{m,n}(R_phi f) - e^{i m phi} C^K_{m,n}(f)| with both fields sampled
/// from the generator on the 2K+1 grid.
double steer_residual(const Function2D& f, HarmonicIndex idx, int K, double phi);

/// Evaluation points of an L' x L' grid on [-a, a]^2 in row-major order.
std::vector<Point> evaluation_grid(int side, double a = 1.0);

}  // namespace ffbt
