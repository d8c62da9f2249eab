#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ffbt/cases.hpp"
#include "ffbt/container.hpp"
#include "ffbt/convolution.hpp"
#include "ffbt/error.hpp"
#include "ffbt/oracle.hpp"
#include "ffbt/parallel.hpp"
#include "ffbt/study.hpp"
#include "ffbt/transform.hpp"
#include "support.hpp"

using namespace ffbt;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

std::string cli_path;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += why;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome bessel_foundation() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int m = 0; m <= 20; ++m) {
    double last = 0.0;
    for (int n = 1; n <= 20; ++n) {
      const double z = bessel_zero(m, n);
      worst = std::max(worst, std::abs(bessel_j(m, z)));
      if (!(z > last)) fail(o, "zeros of J_" + std::to_string(m) + " not increasing at n=" + std::to_string(n));
      last = z;
    }
  }
  const double t = seconds_since(t0);
  if (worst > 1e-12) fail(o, "max |J_m(z)| = " + num(worst));
  if (t >= 5.0) fail(o, "runtime " + num(t) + " s");
  o.detail = o.pass ? "max |J_m(z)| = " + num(worst) + ", " + num(t) + " s" : o.detail;
  return o;
}

Outcome trig_exactness() {
  Outcome o;
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<int> deg(0, 16);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int K = deg(rng), L = 2 * K + 1;
    ComplexMatrix a(L, L);
    for (auto& v : a.values()) v = cplx(u(rng), u(rng));
    // a(k1 + K, k2 + K) multiplies exp(pi i (k1 x + k2 y))
    const Grid grid(L);
    std::vector<std::vector<cplx>> e(L, std::vector<cplx>(L));
    for (int i = 0; i < L; ++i)
      for (int k = -K; k <= K; ++k) e[i][k + K] = std::polar(1.0, kPi * k * grid.node(i));
    ComplexMatrix samples(L, L);
    for (int i = 0; i < L; ++i)
      for (int j = 0; j < L; ++j) {
        cplx s{};
        for (int p = 0; p < L; ++p)
          for (int q = 0; q < L; ++q) s += a(p, q) * e[i][p] * e[j][q];
        samples(i, j) = s;
      }
    const SampledField f(grid, samples);
    for (int k1 = -K; k1 <= K; ++k1)
      for (int k2 = -K; k2 <= K; ++k2) {
        const cplx c = finite_fourier_disk(f, {k1, k2}) / 4.0;
        worst = std::max(worst, std::abs(c - a(k1 + K, k2 + K)));
      }
    if (t % 10 == 0) {
      const Function2D U = [&](double x, double y) {
        cplx s{};
        for (int p = -K; p <= K; ++p)
          for (int q = -K; q <= K; ++q) s += a(p + K, q + K) * std::polar(1.0, kPi * (p * x + q * y));
        return s;
      };
      worst = std::max(worst, std::abs(finite_fourier_coeff_2d(U, {K, -K}, L) - a(2 * K, 0)));
    }
  }
  if (worst > 1e-12) fail(o, "max coefficient error " + num(worst));
  else o.detail = "max coefficient error " + num(worst);
  return o;
}

const Case& bump() { return find_case("bump"); }

Outcome finite_fourier_convergence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto& c = bump();
  const FrequencyIndex k{1, 2};
  const cplx exact = fourier_integral_quadrature(c.f, k);
  const double grad = gradient_sup_norm(c.gradient, c.f.radius);
  double last = INFINITY;
  std::string errs;
  for (int K : {8, 16, 32, 64}) {
    const double err = std::abs(finite_fourier_disk(sample(c.f.f, 2 * K + 1), k) - exact);
    const double bound = 96.0 * grad / (kPi * K);
    errs += (errs.empty() ? "" : " ") + num(err);
    if (!(err < last)) fail(o, "not decreasing at K=" + std::to_string(K));
    if (err > bound) fail(o, "K=" + std::to_string(K) + " error above " + num(bound));
    last = err;
  }
  const double t = seconds_since(t0);
  if (t >= 30.0) fail(o, "runtime " + num(t) + " s");
  if (o.pass) o.detail = "errors " + errs + ", |grad f| = " + num(grad);
  return o;
}

Outcome kernel_bridge() {
  Outcome o;
  const auto& c = bump();
  const auto table = fourier_integral_table(c.f, 48);
  double worst = 0.0;
  for (int m = 0; m <= 2; ++m)
    for (int n = 1; n <= 2; ++n)
      worst = std::max(worst, std::abs(truncated_closed_form(table, {m, n}) - fb_coefficient_quadrature(c.f, {m, n})));
  if (worst > 1e-4) fail(o, "max gap " + num(worst));
  else o.detail = "max gap " + num(worst);
  return o;
}

Outcome ffbt_convergence() {
  Outcome o;
  const auto& c = bump();
  const HarmonicIndex idx{1, 1};
  const cplx exact = fb_coefficient_quadrature(c.f, idx);
  std::vector<double> err;
  for (int K : {8, 16, 32, 64}) err.push_back(std::abs(ffbt::ffbt(sample(c.f.f, 2 * K + 1), idx, K) - exact));
  for (std::size_t i = 1; i < err.size(); ++i)
    if (!(err[i] < err[i - 1])) fail(o, "not decreasing at step " + std::to_string(i));
  const double ratio = std::cbrt(err[3] / err[0]);
  if (ratio > 0.75) fail(o, "geometric-mean ratio " + num(ratio));
  if (o.pass)
    o.detail = "errors " + num(err[0]) + " " + num(err[1]) + " " + num(err[2]) + " " + num(err[3]) + ", ratio " +
               num(ratio);
  return o;
}

Outcome matrix_equivalence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> kd(1, 5), md(0, 3);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int K = kd(rng), M = md(rng), N = std::max(1, M);
    const auto f = testing_support::random_field(2 * K + 1, rng);
    const auto spec = ffbt_block(f, M, N, K);
    for (int m = -M; m <= M; ++m)
      for (int n = 1; n <= N; ++n) {
        const cplx raw = testing_support::raw_ffbt(f, {m, n}, K);
        worst = std::max(worst, std::abs(spec.at(m, n) - raw) / std::max(std::abs(raw), 1e-300));
      }
    const auto pts = evaluation_grid(9, 1.0);
    const auto two = synthesize(f, M, N, K, pts, {SynthesisPath::two_stage});
    const auto tr = synthesize(f, M, N, K, pts, {SynthesisPath::trace});
    double scale = 0.0;
    for (const auto& v : two) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < pts.size(); ++i) worst = std::max(worst, std::abs(two[i] - tr[i]) / scale);
  }
  const double t = seconds_since(t0);
  if (worst > 1e-10) fail(o, "max relative difference " + num(worst));
  if (t >= 10.0) fail(o, "runtime " + num(t) + " s");
  if (o.pass) o.detail = "max relative difference " + num(worst) + ", " + num(t) + " s";
  return o;
}

Outcome thresholds() {
  Outcome o;
  const int want[][3] = {{2, 2, 3}, {5, 5, 8}, {5, 6, 9}, {10, 10, 15}, {15, 15, 22}};
  for (const auto& w : want) {
    const int got = k_min_block(w[0], w[1]);
    if (got != w[2])
      fail(o, "K[" + std::to_string(w[0]) + "," + std::to_string(w[1]) + "] = " + std::to_string(got));
  }
  if (o.pass) o.detail = "K[2,2]=3 K[5,5]=8 K[5,6]=9 K[10,10]=15 K[15,15]=22";
  return o;
}

Outcome harmonic_recovery() {
  Outcome o;
  const auto f = find_case("harmonic-sum").f.f;
  for (auto [K, tol] : {std::pair{3, 0.1}, std::pair{12, 0.02}}) {
    const auto spec = ffbt_block(sample(f, 2 * K + 1), 2, 2, K);
    double worst = 0.0;
    for (int m = -2; m <= 2; ++m)
      for (int n = 1; n <= 2; ++n) {
        const bool hit = (m == 1 && n == 2) || (m == 2 && n == 1);
        worst = std::max(worst, std::abs(spec.at(m, n) - (hit ? 1.0 : 0.0)));
      }
    if (worst > tol) fail(o, "K=" + std::to_string(K) + " deviation " + num(worst));
    else o.detail += (o.detail.empty() ? "" : ", ") + ("K=" + std::to_string(K) + " deviation " + num(worst));
  }
  return o;
}

Outcome symmetries() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> kd(1, 8);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int K = kd(rng);
    const auto f = testing_support::random_field(2 * K + 1, rng, true);
    for (int m = 0; m <= 3; ++m)
      for (int n = 1; n <= 2; ++n) {
        const double sign = m % 2 ? -1.0 : 1.0;
        worst = std::max(worst, std::abs(ffbt::ffbt(f, {-m, n}, K) - sign * std::conj(ffbt::ffbt(f, {m, n}, K))));
      }
  }
  for (int t = 0; t < 50; ++t) {
    const int L = 2 * kd(rng) + (t % 2);
    const auto f = testing_support::random_field(L, rng);
    auto conj_values = f.values();
    for (auto& v : conj_values.values()) v = std::conj(v);
    const SampledField fc(f.grid(), conj_values);
    for (int k1 = -L; k1 <= L; ++k1)
      for (int k2 = -L; k2 <= L; ++k2)
        worst = std::max(worst, std::abs(std::conj(finite_fourier_disk(f, {k1, k2})) -
                                         finite_fourier_disk(fc, {-k1, -k2})));
  }
  if (worst > 1e-12) fail(o, "max residual " + num(worst));
  else o.detail = "max residual " + num(worst);
  return o;
}

Outcome steerability() {
  Outcome o;
  const auto f = bump().f.f;
  double last = INFINITY;
  std::string res;
  for (int K : {8, 16, 32}) {
    const double r = steer_residual(f, {2, 1}, K, kPi / 3.0);
    res += (res.empty() ? "" : " ") + num(r);
    if (!(r < last)) fail(o, "not decreasing at K=" + std::to_string(K));
    last = r;
  }
  const double zero = steer_residual(f, {2, 1}, 16, 0.0);
  if (zero != 0.0) fail(o, "phi=0 residual " + num(zero));
  if (o.pass) o.detail = "residuals " + res;
  return o;
}

Outcome convolution() {
  Outcome o;
  const auto chi = SupportedFunction::disk_indicator(0.5);
  const int K = 15;
  const auto s = iffbt_conv(sample(chi.f, 2 * K + 1), sample(chi.f, 2 * K + 1), 10, 10, K, {Point{0.0, 0.0}});
  const double rel = std::abs(s[0] - kPi / 4.0) / (kPi / 4.0);
  if (rel > 0.05) fail(o, "S(0,0) off by " + num(rel));

  double lens_gap = 0.0;
  for (Point x : {Point{0.0, 0.0}, Point{0.3, 0.1}, Point{-0.5, 0.6}, Point{0.9, 0.0}}) {
    const double exact = lens_area(0.5, 0.5, std::hypot(x.x, x.y));
    lens_gap = std::max(lens_gap, std::abs(direct_convolution_quadrature(chi, chi, x) - exact));
  }
  if (lens_gap > 1e-4) fail(o, "lens gap " + num(lens_gap));

  StudyConfig cfg;
  cfg.case_name = "bump-pair";
  cfg.k_list = {8, 16, 32};
  const auto r = run_conv_study(cfg);
  std::vector<double> block(3, 0.0);
  for (const auto& row : r.rows) {
    const std::size_t i = row.K == 8 ? 0 : row.K == 16 ? 1 : 2;
    block[i] = std::max(block[i], row.gap);
  }
  if (!r.monotone || !(block[1] < block[0] && block[2] < block[1]))
    fail(o, "sampled-convolution gap not decreasing: " + num(block[0]) + " " + num(block[1]) + " " + num(block[2]));
  if (o.pass)
    o.detail = "S(0,0)=" + num(s[0].real()) + " (" + num(100.0 * rel) + "%), lens gap " + num(lens_gap) + ", gaps " +
               num(block[0]) + " " + num(block[1]) + " " + num(block[2]);
  return o;
}

Outcome reproducibility() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "ffbt_acceptance_repro";
  fs::remove_all(root);
  std::vector<std::string> runs;
  for (const char* tag : {"a", "b"}) {
    const fs::path dir = root / tag;
    fs::create_directories(dir / "grids");
    std::string csv;
    if (!cli_path.empty()) {
      const std::string cmd = "\"" + cli_path + "\" --threads 1 --seed 5 study --case exp-sin --K-list 9,18 --out \"" +
                              (dir / "report.csv").string() + "\" --grid-dir \"" + (dir / "grids").string() +
                              "\" 2>/dev/null";
      if (std::system(cmd.c_str()) != 0) fail(o, std::string("study run ") + tag + " failed");
    } else {
      set_thread_count(1);
      StudyConfig cfg;
      cfg.case_name = "exp-sin";
      cfg.k_list = {9, 18};
      cfg.csv = dir / "report.csv";
      cfg.grid_dir = dir / "grids";
      run_study(cfg);
    }
    std::string all = read_text(dir / "report.csv");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir / "grids")) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) all += p.filename().string() + "\n" + read_text(p);
    runs.push_back(all);
  }
  if (runs[0] != runs[1]) fail(o, "outputs differ");
  if (o.pass) o.detail = std::to_string(runs[0].size()) + " bytes identical" + (cli_path.empty() ? " (in-process)" : "");
  fs::remove_all(root);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  set_warning_handler([](const std::string&) {});
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"bessel foundation", bessel_foundation},
      {"trig exactness", trig_exactness},
      {"finite-Fourier convergence", finite_fourier_convergence},
      {"kernel bridge", kernel_bridge},
      {"FFBT convergence", ffbt_convergence},
      {"matrix-form equivalence", matrix_equivalence},
      {"block thresholds", thresholds},
      {"harmonic recovery", harmonic_recovery},
      {"symmetries", symmetries},
      {"steerability", steerability},
      {"convolution", convolution},
      {"reproducibility", reproducibility},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures ? 1 : 0;
}
