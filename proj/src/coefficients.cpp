#include "ffbt/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ffbt/container.hpp"
#include "ffbt/error.hpp"
#include "ffbt/parallel.hpp"

namespace ffbt {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);

cplx i_power(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double parity(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

// c(k; m, n) from a precomputed J_{|m|}(pi |k|).
cplx coeff_from_bessel(int k1, int k2, int m, int n, double z, double j_abs_m) {
  const double norm2 = double(k1) * k1 + double(k2) * k2;
  const double gap = kPi * kPi * norm2 - z * z;
  if (std::abs(gap) < 1e-9 * z * z)
    throw NearResonanceError("c(k;m,n) near resonance at k=(" + std::to_string(k1) + "," + std::to_string(k2) +
                             "), (m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ")");
  const double phi = (k1 == 0 && k2 == 0) ? 0.0 : std::atan2(double(k2), double(k1));
  // J_m = (-1)^m J_{|m|} for m < 0, and the m < 0 branch carries another (-1)^m.
  const double jm = j_abs_m;
  const double scale = kSqrtPi * parity(n) * z * jm / (2.0 * gap);
  return i_power(m) * std::polar(1.0, -m * phi) * scale;
}

// J_0..J_{max_order}(pi |k|) for every k in the box |k|_inf <= K, stored for
// the quadrant k1, k2 >= 0 only.
class FrequencyTable {
 public:
  FrequencyTable(int K, int max_order) : K_(K), orders_(max_order + 1), values_() {
    const std::size_t q = std::size_t(K + 1);
    values_.resize(q * q * orders_);
    parallel_for(q, [&](std::size_t a) {
      for (std::size_t b = 0; b <= std::size_t(K); ++b) {
        const double x = kPi * std::hypot(double(a), double(b));
        const auto j = bessel_j_orders(max_order, x);
        std::copy(j.begin(), j.end(), values_.begin() + std::ptrdiff_t((a * q + b) * orders_));
      }
    });
  }

  double bessel(int k1, int k2, int order) const {
    const std::size_t q = std::size_t(K_ + 1);
    return values_[(std::size_t(std::abs(k1)) * q + std::size_t(std::abs(k2))) * orders_ + std::size_t(order)];
  }

  int K() const { return K_; }

 private:
  int K_;
  std::size_t orders_;
  std::vector<double> values_;
};

int frequency_of(int j, int K) { return j <= K ? j : j - (2 * K + 1); }

CoefficientKernel kernel_from_table(const FrequencyTable& table, HarmonicIndex idx) {
  const int K = table.K();
  const int side = 2 * K + 1;
  const int am = std::abs(idx.m);
  const double z = bessel_zero(am, idx.n);
  CoefficientKernel kernel{idx, K, ComplexMatrix(side, side), ComplexMatrix(side, side)};
  for (int p = 0; p < side; ++p) {
    const int k2 = frequency_of(p, K);
    for (int l = 0; l < side; ++l) {
      const int k1 = frequency_of(l, K);
      const cplx c = coeff_from_bessel(k1, k2, idx.m, idx.n, z, table.bessel(k1, k2, am));
      kernel.q_cross(p, l) = c;
      kernel.q(p, l) = ((k1 + k2) % 2 == 0) ? c : -c;
    }
  }
  return kernel;
}

}  // namespace

cplx coeff_c(FrequencyIndex k, HarmonicIndex idx) {
  const int am = std::abs(idx.m);
  const double z = bessel_zero(am, idx.n);
  return coeff_from_bessel(k.k1, k.k2, idx.m, idx.n, z, bessel_j(am, kPi * k.norm()));
}

int k_min(HarmonicIndex idx) { return int(std::ceil(bessel_zero(std::abs(idx.m), idx.n) / kPi)); }

int k_min_block(int M, int N) {
  if (M < 0 || N < 1) throw InvalidArgument("k_min_block requires M >= 0 and N >= 1");
  int best = 0;
  for (int m = 0; m <= M; ++m)
    for (int n = 1; n <= N; ++n) best = std::max(best, k_min({m, n}));
  return best;
}

double min_resonance_gap(int k_max, int m_max, int n_max) {
  std::vector<int> sums;
  for (int a = 0; a <= k_max; ++a)
    for (int b = 0; b <= a; ++b) sums.push_back(a * a + b * b);
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  double worst = std::numeric_limits<double>::infinity();
  for (int m = 0; m <= m_max; ++m) {
    for (int n = 1; n <= n_max; ++n) {
      const double z = bessel_zero(m, n);
      const double target = z * z / (kPi * kPi);
      auto it = std::lower_bound(sums.begin(), sums.end(), int(std::floor(target)));
      for (auto jt : {it - 1, it, it + 1}) {
        if (jt < sums.begin() || jt >= sums.end()) continue;
        worst = std::min(worst, std::abs(kPi * kPi * *jt - z * z) / (z * z));
      }
    }
  }
  return worst;
}

double alpha_constant(HarmonicIndex idx) {
  const double z = bessel_zero(std::abs(idx.m), idx.n);
  const double kmn = k_min(idx);
  return kSqrtPi * kmn * kmn * z / (kPi * kPi * kmn * kmn - z * z);
}

BetaPartial beta_partial(HarmonicIndex idx, int cutoff) {
  if (cutoff < k_min(idx))
    throw InvalidArgument("beta_partial: cutoff " + std::to_string(cutoff) + " below K_{m,n}=" +
                          std::to_string(k_min(idx)));
  const FrequencyTable table(cutoff, std::abs(idx.m));
  const int am = std::abs(idx.m);
  const double z = bessel_zero(am, idx.n);
  BetaPartial out;
  for (int k1 = -cutoff; k1 <= cutoff; ++k1)
    for (int k2 = -cutoff; k2 <= cutoff; ++k2)
      out.partial += std::abs(coeff_from_bessel(k1, k2, idx.m, idx.n, z, table.bessel(k1, k2, am)));

  // For |k|_inf > C >= K_{m,n}: |c(k)| <= (alpha/2) |J_m(pi|k|)| / |k|^2, with
  // |J_m(x)| <= sqrt(2/pi) (1 - m^2/x^2)^{-1/4} x^{-1/2} for x > m, and
  // sum_{|k|_inf > C} |k|^{-5/2} <= 16 / sqrt(C).
  const double c = cutoff;
  const double x0 = kPi * c;
  const double envelope = std::sqrt(2.0 / kPi) * std::pow(1.0 - (am * am) / (x0 * x0), -0.25);
  out.tail_bound = 0.5 * alpha_constant(idx) * envelope / kSqrtPi * 16.0 / std::sqrt(c);
  return out;
}

ModeConstants mode_constants(HarmonicIndex idx, int beta_cutoff) {
  ModeConstants out;
  out.alpha = alpha_constant(idx);
  out.beta = beta_partial(idx, std::max(beta_cutoff, k_min(idx)));
  out.gamma = std::max(out.alpha, out.beta.partial + out.beta.tail_bound);
  return out;
}

double block_constant(int M, int N, int beta_cutoff) {
  if (M < 0 || N < 1) throw InvalidArgument("block_constant requires M >= 0 and N >= 1");
  double total = 0.0;
  for (int m = 0; m <= M; ++m) {
    for (int n = 1; n <= N; ++n) {
      const HarmonicIndex idx{m, n};
      // gamma and |J_{m+1}(z)| are even in m.
      const double term = mode_constants(idx, beta_cutoff).gamma / radial_norm_factor(idx);
      total += (m == 0) ? term : 2.0 * term;
    }
  }
  return total;
}

CoefficientKernel build_kernel(HarmonicIndex idx, int K) {
  if (K < 1) throw InvalidArgument("build_kernel requires K >= 1");
  return kernel_from_table(FrequencyTable(K, std::abs(idx.m)), idx);
}

std::vector<CoefficientKernel> build_kernel_block(int M, int N, int K) {
  if (K < 1) throw InvalidArgument("build_kernel_block requires K >= 1");
  if (M < 0 || N < 1) throw InvalidArgument("build_kernel_block requires M >= 0 and N >= 1");
  const FrequencyTable table(K, M);
  const std::size_t modes = std::size_t(2 * M + 1) * std::size_t(N);
  std::vector<CoefficientKernel> out(modes);
  parallel_for(modes, [&](std::size_t t) {
    const int m = int(t / std::size_t(N)) - M;
    const int n = int(t % std::size_t(N)) + 1;
    out[t] = kernel_from_table(table, {m, n});
  });
  return out;
}

KernelCache::KernelCache(std::optional<std::filesystem::path> directory) : directory_(std::move(directory)) {}

KernelCache& KernelCache::global() {
  static KernelCache cache;
  return cache;
}

std::shared_ptr<const CoefficientKernel> KernelCache::get(HarmonicIndex idx, int K) {
  const auto key = std::tuple{idx.m, idx.n, K};
  {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
  }
  std::shared_ptr<const CoefficientKernel> kernel;
  if (directory_) {
    const auto q_path = *directory_ / kernel_file_name(KernelKind::plain, idx, K);
    const auto qx_path = *directory_ / kernel_file_name(KernelKind::cross, idx, K);
    if (std::filesystem::exists(q_path) && std::filesystem::exists(qx_path)) {
      auto q = read_kernel_matrix(q_path);
      auto qx = read_kernel_matrix(qx_path);
      kernel = std::make_shared<const CoefficientKernel>(
          CoefficientKernel{idx, K, std::move(q.values), std::move(qx.values)});
    }
  }
  if (!kernel) {
    kernel = std::make_shared<const CoefficientKernel>(build_kernel(idx, K));
    if (directory_) {
      std::filesystem::create_directories(*directory_);
      write_kernel_matrix(*directory_ / kernel_file_name(KernelKind::plain, idx, K), KernelKind::plain, idx, K,
                          kernel->q);
      write_kernel_matrix(*directory_ / kernel_file_name(KernelKind::cross, idx, K), KernelKind::cross, idx, K,
                          kernel->q_cross);
    }
  }
  std::lock_guard lock(mutex_);
  return entries_.emplace(key, kernel).first->second;
}

}  // namespace ffbt
