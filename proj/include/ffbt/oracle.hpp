#pragma once

#include <optional>
#include <vector>

#include "ffbt/finite_fourier.hpp"
#include "ffbt/sampling.hpp"
#include "ffbt/special_functions.hpp"
#include "ffbt/transform.hpp"

namespace ffbt {

// Slow reference values of the continuous quantities approximated by the
// fast transforms. Polar rules: Gauss-Legendre in r, trapezoid in theta.
struct QuadratureSpec {
  int radial_nodes = 256;
  int angular_nodes = 512;
  int cartesian_nodes = 256;

  void validate() const;  // every count >= 8
};

// A function together with a disk containing its support. Integration runs
// over that disk, so a kink on its boundary falls on a quadrature breakpoint.
struct SupportedFunction {
  Function2D f;
  Point center;
  double radius = 1.0;
  std::optional<double> indicator_radius;  // f is the indicator of the closed disk

  SupportedFunction(Function2D fn, Point c = {}, double r = 1.0) : f(std::move(fn)), center(c), radius(r) {}

  static SupportedFunction disk_indicator(double r, Point c = {});
};

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(int n);

/// C_{m,n}(f) = int_B f conj(Psi_{m,n}).
cplx fb_coefficient_quadrature(const SupportedFunction& f, HarmonicIndex idx, const QuadratureSpec& q = {});

/// All C_{m,n}(f), |m| <= M, 1 <= n <= N, from one set of samples (K = 0).
Spectrum fb_coefficient_block(const SupportedFunction& f, int M, int N, const QuadratureSpec& q = {});

/// f^(k) = int f(y) exp(-pi i k.y) dy over the support disk of f.
cplx fourier_integral_quadrature(const SupportedFunction& f, FrequencyIndex k, const QuadratureSpec& q = {});

/// f^(k) for every |k|_inf <= kmax; entry (k1 + kmax, k2 + kmax).
ComplexMatrix fourier_integral_table(const SupportedFunction& f, int kmax, const QuadratureSpec& q = {});

/// sum_{|k|_inf <= cutoff} c(k; m, n) f^(k). Requires cutoff >= K_{m,n}.
cplx truncated_closed_form(const SupportedFunction& f, HarmonicIndex idx, int cutoff, const QuadratureSpec& q = {});

/// Same sum from a precomputed fourier_integral_table (cutoff = kmax).
cplx truncated_closed_form(const ComplexMatrix& table, HarmonicIndex idx);

/// Area of the intersection of two disks of radii r, s whose centers are d apart.
double lens_area(double r, double s, double d);

/// (f*g)(x) = int f(y) g(x - y) dy. Uses lens_area when both factors are disk
/// indicators, direct_convolution_quadrature otherwise.
cplx direct_convolution(const SupportedFunction& f, const SupportedFunction& g, Point x, const QuadratureSpec& q = {});

/// Polar quadrature about the center of f with radial and angular breakpoints
/// where rays meet the support circle of g(x - .).
cplx direct_convolution_quadrature(const SupportedFunction& f, const SupportedFunction& g, Point x,
                                   const QuadratureSpec& q = {});

/// S_{M,N}(f) built from quadrature coefficients.
class PartialSumReference {
 public:
  explicit PartialSumReference(Spectrum coefficients) : spec_(std::move(coefficients)) {}

  cplx operator()(Point p) const { return iffbt(spec_, p); }
  std::vector<cplx> operator()(const std::vector<Point>& points) const { return iffbt(spec_, points); }
  const Spectrum& coefficients() const { return spec_; }

 private:
  Spectrum spec_;
};

PartialSumReference partial_sum_reference(const SupportedFunction& f, int M, int N, const QuadratureSpec& q = {});

}  // namespace ffbt
