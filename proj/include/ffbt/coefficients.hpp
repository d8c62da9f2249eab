#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

#include "ffbt/finite_fourier.hpp"
#include "ffbt/matrix.hpp"
#include "ffbt/special_functions.hpp"

namespace ffbt {

/// Transform kernel c(k; m, n) linking Fourier integrals at integer
/// frequencies to Fourier-Bessel coefficients:
///   sqrt(pi) (-1)^n i^m z J_m(pi |k|) e^{-i m atan2(k2,k1)} / (2 (pi^2 |k|^2 - z^2))
/// with an extra (-1)^m for m < 0 and atan2(0,0) := 0.
/// Throws NearResonanceError when |pi^2 |k|^2 - z^2| < 1e-9 z^2.
cplx coeff_c(FrequencyIndex k, HarmonicIndex idx);

/// K_{m,n} = ceil(z_{|m|,n} / pi).
int k_min(HarmonicIndex idx);

/// K[M,N] = max K_{m,n} over 0 <= m <= M, 1 <= n <= N.
int k_min_block(int M, int N);

/// Smallest relative gap |pi^2 s - z^2| / z^2 over integers s = k1^2 + k2^2
/// with |k|_inf <= k_max and zeros z_{m,n}, m <= m_max, n <= n_max.
double min_resonance_gap(int k_max, int m_max, int n_max);

/// alpha_{m,n} = sqrt(pi) K_{m,n}^2 z / (pi^2 K_{m,n}^2 - z^2); bounds
/// |c(k)| <= alpha / K^2 for |k|_inf > K >= K_{m,n}.
double alpha_constant(HarmonicIndex idx);

struct BetaPartial {
  double partial = 0.0;     // sum of |c(k)| over |k|_inf <= cutoff
  double tail_bound = 0.0;  // upper bound of the remaining sum
};

/// Truncated absolute kernel sum with an analytic bound on the tail.
/// Requires cutoff >= k_min(idx).
BetaPartial beta_partial(HarmonicIndex idx, int cutoff);

// Per-mode constants of the a-priori error bounds.
struct ModeConstants {
  double alpha = 0.0;
  BetaPartial beta;
  double gamma = 0.0;  // max(alpha, beta.partial + beta.tail_bound)
};

ModeConstants mode_constants(HarmonicIndex idx, int beta_cutoff = 64);

/// D[M,N] = sum_{|m|<=M, n<=N} gamma_{m,n} / |J_{m+1}(z_{m,n})|.
double block_constant(int M, int N, int beta_cutoff = 64);

// Caller-supplied properties of the unknown input, used only for choosing K.
struct ErrorBudget {
  std::optional<double> c_f;        // max(96 |grad f|_inf / pi, |f|_A)
  std::optional<double> d_fg;       // convolution constant
  std::optional<double> grad_bound; // |grad f|_inf, for single Fourier integrals
  int beta_cutoff = 64;
};

enum class KernelKind { plain, cross };

/// Folded kernel matrices for one mode at band limit K (L = 2K+1).
/// q(p, l) = c(k1(l), k2(p)) (-1)^{k1+k2} and q_cross(p, l) = c(k1(l), k2(p)),
/// where an index j maps to frequency j for j <= K and j - L otherwise, so
/// C^K = delta^2 tr(q F^) and C^K[f,g] = delta^4 tr(q_cross (F^ . G^)).
struct CoefficientKernel {
  HarmonicIndex idx;
  int K = 0;
  ComplexMatrix q;
  ComplexMatrix q_cross;

  int side() const { return 2 * K + 1; }
  const ComplexMatrix& matrix(KernelKind kind) const { return kind == KernelKind::plain ? q : q_cross; }
};

CoefficientKernel build_kernel(HarmonicIndex idx, int K);

/// Kernels of every mode |m| <= M, 1 <= n <= N, sharing one pass of Bessel
/// evaluations. Ordered by (m + M) * N + (n - 1).
std::vector<CoefficientKernel> build_kernel_block(int M, int N, int K);

inline std::size_t block_offset(int m, int n, int M, int N) {
  return std::size_t(m + M) * std::size_t(N) + std::size_t(n - 1);
}

/// Write-once kernel store keyed by (m, n, K). Looks in memory, then in the
/// optional directory, and builds (and persists) on a miss.
class KernelCache {
 public:
  explicit KernelCache(std::optional<std::filesystem::path> directory = std::nullopt);

  std::shared_ptr<const CoefficientKernel> get(HarmonicIndex idx, int K);

  // Process-wide in-memory cache without a directory.
  static KernelCache& global();

 private:
  std::optional<std::filesystem::path> directory_;
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, std::shared_ptr<const CoefficientKernel>> entries_;
};

}  // namespace ffbt
