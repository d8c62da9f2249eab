#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ffbt/cases.hpp"
#include "ffbt/coefficients.hpp"

namespace ffbt {

struct StudyConfig {
  std::string case_name;
  std::vector<int> k_list;  // empty: the case default
  std::optional<int> M, N;
  std::optional<double> a;
  std::optional<int> eval_grid;
  std::optional<std::filesystem::path> csv;       // report destination
  std::optional<std::filesystem::path> grid_dir;  // synthesized field files
  QuadratureSpec quadrature;
};

struct StudyRow {
  int K = 0;
  double max_abs_err = 0.0;
  double mode_err = 0.0;
  double l2_err = 0.0;
};

struct StudyReport {
  std::string case_name;
  std::vector<StudyRow> rows;
  bool monotone = true;
  std::string csv;      // K,max_abs_err,mode_err
  std::string summary;  // human-readable lines
};

/// Analysis (or convolution) of a registry case at each K, compared with the
/// quadrature partial sum S_{M,N}. Synthesized values are compared in the
/// unit disk coordinates; field files hold physical values (convolutions
/// multiplied by a^2). monotone holds when the error (L2 grid norm for
/// indicator cases, sup norm otherwise) strictly decreases along the K list.
StudyReport run_study(const StudyConfig& cfg);

struct ConvStudyRow {
  int K = 0;
  int m = 0;
  int n = 1;
  double gap = 0.0;  // |C^K[f,g] - C^K(samples of f*g)|
};

struct ConvStudyReport {
  std::string case_name;
  std::vector<ConvStudyRow> rows;
  bool monotone = true;  // max gap over the block strictly decreases in K
  std::string csv;       // K,m,n,gap
  std::string summary;
};

ConvStudyReport run_conv_study(const StudyConfig& cfg);

/// f(a x) with the support disk scaled accordingly.
SupportedFunction scale_support(const SupportedFunction& f, double a);

enum class PlanMode { single, block, conv, conv_block, fourier };

struct PlanRequest {
  PlanMode mode = PlanMode::single;
  HarmonicIndex idx;
  int M = 0;
  int N = 1;
};

struct EpsilonPlan {
  int K = 0;
  int L = 0;
  double constant = 0.0;  // the numerator of K >= constant / eps
  int threshold = 0;      // K_{m,n}, K[M,N] or 1
};

/// K = ceil(max(constant / eps, threshold)), L = 2K+1, with constant
///   single:     2 c_f gamma_{m,n}
///   block:      2 c_f D[M,N]
///   conv:       2 d_fg gamma_{m,n}
///   conv_block: 2 d_fg D[M,N]
///   fourier:    96 |grad f|_inf / pi
/// Throws InvalidArgument naming the missing bound.
EpsilonPlan epsilon_plan(double eps, const ErrorBudget& budget, const PlanRequest& request);

}  // namespace ffbt
