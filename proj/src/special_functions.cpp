#include "ffbt/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>

#include "ffbt/error.hpp"

namespace ffbt {

HarmonicIndex::HarmonicIndex(int m_, int n_) : m(m_), n(n_) {
  if (n_ < 1) throw InvalidArgument("harmonic index requires n >= 1, got n=" + std::to_string(n_));
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesLimit = 2.0;

bool odd(int m) { return (m % 2) != 0; }

// Largest |x| handed to Miller's recurrence for order m; Hankel's expansion
// takes over beyond it.
double hankel_threshold(int m) { return std::max(60.0, 2.0 * double(m) * double(m)); }

// J_0..J_{max_order} at x > 0 by normalized backward recurrence.
std::vector<double> miller_sweep(int max_order, double x) {
  // The start index depends on max(x, 32) unless a higher order is asked
  // for, so batches of up to 32 orders reproduce the single-order values.
  const double top = std::max({double(max_order), x, 32.0});
  int start = int(top) + 20 + int(std::sqrt(60.0 * top));
  if (odd(start)) ++start;

  std::vector<double> j(std::size_t(start) + 2, 0.0);
  j[start + 1] = 0.0;
  j[start] = 1e-30;
  double norm = 0.0;  // j_0 + 2 * sum of even-index j_k
  if (!odd(start)) norm += 2.0 * j[start];
  const double two_over_x = 2.0 / x;
  for (int k = start; k >= 1; --k) {
    j[k - 1] = k * two_over_x * j[k] - j[k + 1];
    if (k - 1 > 0 && !odd(k - 1)) norm += 2.0 * j[k - 1];
    if (std::abs(j[k - 1]) > 1e250) {
      for (int i = k - 1; i <= start + 1; ++i) j[i] *= 1e-250;
      norm *= 1e-250;
    }
  }
  norm += j[0];

  std::vector<double> out(std::size_t(max_order) + 1);
  for (int k = 0; k <= max_order; ++k) out[k] = j[k] / norm;
  return out;
}

}  // namespace

namespace detail {

double bessel_j_series(int m, double x) {
  if (m < 0) return odd(m) ? -bessel_j_series(-m, x) : bessel_j_series(-m, x);
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= m; ++k) term *= half / k;
  double sum = term;
  const double q = -half * half;
  for (int k = 1; k < 500; ++k) {
    term *= q / (double(k) * double(k + m));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

double bessel_j_miller(int m, double x) {
  if (m < 0) return odd(m) ? -bessel_j_miller(-m, x) : bessel_j_miller(-m, x);
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;
  if (x < 0.0) return odd(m) ? -bessel_j_miller(m, -x) : bessel_j_miller(m, -x);
  return miller_sweep(m, x)[m];
}

double bessel_j_hankel(int m, double x) {
  if (m < 0) return odd(m) ? -bessel_j_hankel(-m, x) : bessel_j_hankel(-m, x);
  if (x < 0.0) return odd(m) ? -bessel_j_hankel(m, -x) : bessel_j_hankel(m, -x);
  const double mu = 4.0 * double(m) * double(m);
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 400; ++k) {
    const double odd_sq = double(2 * k - 1) * double(2 * k - 1);
    term *= (mu - odd_sq) / (8.0 * x * k);
    const double mag = std::abs(term);
    if (mag == 0.0 || mag > last) break;  // exact termination or divergence onset
    last = mag;
    // term_k carries sign (-1)^{floor(k/2)} in P (k even) or Q (k odd).
    const double signed_term = ((k / 2) % 2 == 0) ? term : -term;
    if (k % 2 == 0) {
      p += signed_term;
    } else {
      q += signed_term;
    }
    if (mag < 1e-17) break;
  }
  // chi = x - (2m+1) pi/4, with the phase reduced modulo 2 pi first.
  const double phase = double((2 * m + 1) % 8) * kPi / 4.0;
  const double chi = x - phase;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace detail

double bessel_j(int m, double x) {
  if (!std::isfinite(x)) throw InvalidArgument("bessel_j: non-finite argument");
  if (m < 0) return odd(m) ? -bessel_j(-m, x) : bessel_j(-m, x);
  const double ax = std::abs(x);
  double value;
  if (ax == 0.0) {
    value = (m == 0) ? 1.0 : 0.0;
  } else if (ax < kSeriesLimit) {
    value = detail::bessel_j_series(m, ax);
  } else if (ax > hankel_threshold(m)) {
    value = detail::bessel_j_hankel(m, ax);
  } else {
    value = miller_sweep(m, ax)[m];
  }
  return (x < 0.0 && odd(m)) ? -value : value;
}

std::vector<double> bessel_j_orders(int max_order, double x) {
  if (!std::isfinite(x)) throw InvalidArgument("bessel_j_orders: non-finite argument");
  if (max_order < 0) throw InvalidArgument("bessel_j_orders: negative max order");
  const double ax = std::abs(x);
  std::vector<double> out;
  if (ax == 0.0) {
    out.assign(std::size_t(max_order) + 1, 0.0);
    out[0] = 1.0;
  } else if (ax < kSeriesLimit) {
    out.resize(std::size_t(max_order) + 1);
    for (int k = 0; k <= max_order; ++k) out[k] = detail::bessel_j_series(k, ax);
  } else {
    out = miller_sweep(max_order, ax);
  }
  if (x < 0.0)
    for (int k = 1; k <= max_order; k += 2) out[k] = -out[k];
  return out;
}

BesselZeroTable& BesselZeroTable::global() {
  static BesselZeroTable table;
  return table;
}

double BesselZeroTable::zero(int m, int n) {
  if (m < 0 || n < 1)
    throw InvalidArgument("bessel_zero requires m >= 0 and n >= 1, got (" + std::to_string(m) + "," +
                          std::to_string(n) + ")");
  {
    std::shared_lock lock(mutex_);
    auto it = entries_.find({m, n});
    if (it != entries_.end()) return it->second;
  }
  const double z = compute(m, n);
  std::unique_lock lock(mutex_);
  return entries_.emplace(std::pair{m, n}, z).first->second;
}

void BesselZeroTable::populate(int m_max, int n_max) {
  for (int m = 0; m <= m_max; ++m)
    for (int n = 1; n <= n_max; ++n) zero(m, n);
}

std::size_t BesselZeroTable::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

double BesselZeroTable::compute(int m, int n) {
  // J_m has exactly one zero between consecutive zeros of J_{m-1}.
  double lo;
  double hi;
  if (m == 0) {
    lo = (n - 0.5) * kPi;
    hi = n * kPi;
  } else {
    lo = zero(m - 1, n);
    hi = zero(m - 1, n + 1);
  }
  double f_lo = bessel_j(m, lo);
  const double f_hi = bessel_j(m, hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0))
    throw std::logic_error("bessel_zero: bracket without sign change at (" + std::to_string(m) + "," +
                           std::to_string(n) + ")");

  // McMahon: z ~ beta - (mu - 1) / (8 beta).
  const double beta = (n + 0.5 * m - 0.25) * kPi;
  double x = beta - (4.0 * m * m - 1.0) / (8.0 * beta);
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

  for (int iter = 0; iter < 200; ++iter) {
    const double f = bessel_j(m, x);
    if (f == 0.0) return x;
    const double df = 0.5 * (bessel_j(m - 1, x) - bessel_j(m + 1, x));
    const double tol = 1e-14 * std::max(1.0, x);
    if (df != 0.0 && std::abs(f / df) <= tol) return std::clamp(x - f / df, lo, hi);
    if ((f > 0.0) == (f_lo > 0.0)) {
      lo = x;
      f_lo = f;
    } else {
      hi = x;
    }
    double next = (df != 0.0) ? x - f / df : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
    if (hi - lo <= tol) break;
  }
  return x;
}

double bessel_zero(int m, int n) { return BesselZeroTable::global().zero(m, n); }

double radial_norm_factor(HarmonicIndex idx) {
  const int am = std::abs(idx.m);
  return std::abs(bessel_j(am + 1, bessel_zero(am, idx.n)));
}

double normalized_radial(HarmonicIndex idx, double r) {
  if (!(r >= 0.0 && r <= 1.0))
    throw DomainError("normalized_radial: r must lie in [0,1], got " + std::to_string(r));
  const double z = bessel_zero(std::abs(idx.m), idx.n);
  return std::numbers::sqrt2 * bessel_j(idx.m, z * r) / radial_norm_factor(idx);
}

std::complex<double> polar_harmonic(HarmonicIndex idx, double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw InvalidArgument("polar_harmonic: non-finite point");
  const double r = std::hypot(x, y);
  if (r > 1.0) return {0.0, 0.0};
  const double theta = std::atan2(y, x);
  const double scale = normalized_radial(idx, r) / std::sqrt(2.0 * kPi);
  return std::polar(1.0, idx.m * theta) * scale;
}

}  // namespace ffbt
