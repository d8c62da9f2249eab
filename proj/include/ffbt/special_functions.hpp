#pragma once

#include <complex>
#include <map>
#include <shared_mutex>
#include <utility>
#include <vector>

namespace ffbt {

// (m, n) addresses the polar harmonic Psi_{m,n}; m is the angular order and
// n >= 1 the radial index.
struct HarmonicIndex {
  int m = 0;
  int n = 1;

  HarmonicIndex() = default;
  HarmonicIndex(int m_, int n_);

  auto operator<=>(const HarmonicIndex&) const = default;
};

/// Bessel function of the first kind J_m(x) for integer order.
///
/// Power series near the origin, Miller's normalized backward recurrence in
/// the transition range and Hankel's asymptotic expansion once
/// |x| > max(60, 2 m^2). Absolute error is below 1e-13 for |x| <= 200 and
/// |m| <= 64. Throws InvalidArgument for non-finite x.
double bessel_j(int m, double x);

/// J_0(x), ..., J_{max_order}(x) from a single recurrence sweep.
std::vector<double> bessel_j_orders(int max_order, double x);

namespace detail {
// The individual evaluation routes, exposed for cross-validation tests.
double bessel_j_series(int m, double x);
double bessel_j_miller(int m, double x);
double bessel_j_hankel(int m, double x);
}  // namespace detail

/// Positive zeros z_{m,n} of J_m, memoized. Entries are immutable once
/// inserted; lookups take a shared lock and insertion a unique one.
class BesselZeroTable {
 public:
  double zero(int m, int n);

  // Eagerly fills 0 <= m <= m_max, 1 <= n <= n_max.
  void populate(int m_max, int n_max);
  std::size_t size() const;

  static BesselZeroTable& global();

 private:
  double compute(int m, int n);

  mutable std::shared_mutex mutex_;
  std::map<std::pair<int, int>, double> entries_;
};

/// n-th positive zero of J_m from the global table. Requires m >= 0, n >= 1.
double bessel_zero(int m, int n);

/// sqrt(2) J_m(z_{m,n} r) / |J_{m+1}(z_{m,n})| for r in [0, 1]; negative m
/// resolves through z_{|m|,n}. Throws DomainError outside [0, 1].
double normalized_radial(HarmonicIndex idx, double r);

/// |J_{|m|+1}(z_{|m|,n})|, the normalization of the radial profile.
double radial_norm_factor(HarmonicIndex idx);

/// (2 pi)^{-1/2} e^{i m theta} J_{m,n}(r) inside the closed unit disk, 0 outside.
std::complex<double> polar_harmonic(HarmonicIndex idx, double x, double y);

}  // namespace ffbt
