#include "ffbt/study.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ffbt/container.hpp"
#include "ffbt/convolution.hpp"
#include "ffbt/error.hpp"
#include "ffbt/transform.hpp"

namespace ffbt {

namespace {

// Inner rule for oracle convolution values; the factors are piecewise
// polynomial along each ray, so few radial nodes are exact.
const QuadratureSpec kInnerConvolution{32, 64, 64};

struct Resolved {
  const Case* c;
  std::vector<int> ks;
  int M, N, eval_grid;
  double a;
};

Resolved resolve(const StudyConfig& cfg) {
  const Case& c = find_case(cfg.case_name);
  Resolved r{&c, cfg.k_list.empty() ? c.k_list : cfg.k_list, cfg.M.value_or(c.M), cfg.N.value_or(c.N),
             cfg.eval_grid.value_or(c.eval_grid), cfg.a.value_or(c.a)};
  if (r.ks.empty()) throw InvalidArgument("K list is empty");
  for (std::size_t i = 0; i < r.ks.size(); ++i) {
    if (r.ks[i] < 1) throw InvalidArgument("K values must be >= 1");
    if (i && r.ks[i] <= r.ks[i - 1]) throw InvalidArgument("K list must be strictly increasing");
  }
  if (r.M < 0 || r.N < 1) throw InvalidArgument("study requires M >= 0 and N >= 1");
  if (r.eval_grid < 1) throw InvalidArgument("evaluation grid must be >= 1");
  if (!(r.a > 0.0)) throw InvalidArgument("a must be positive");
  return r;
}

// f~ * g~ as a supported function on the unit disk coordinates.
SupportedFunction convolution_target(const SupportedFunction& f, const SupportedFunction& g) {
  SupportedFunction h([f, g](double x, double y) { return direct_convolution(f, g, {x, y}, kInnerConvolution); },
                      {f.center.x + g.center.x, f.center.y + g.center.y}, f.radius + g.radius);
  return h;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

std::string grid_file(const std::filesystem::path& dir, const std::string& name, const std::string& tag) {
  return (dir / (name + "_" + tag + ".json")).string();
}

}  // namespace

SupportedFunction scale_support(const SupportedFunction& f, double a) {
  SupportedFunction s([fn = f.f, a](double x, double y) { return fn(a * x, a * y); },
                      {f.center.x / a, f.center.y / a}, f.radius / a);
  if (f.indicator_radius) s.indicator_radius = *f.indicator_radius / a;
  return s;
}

StudyReport run_study(const StudyConfig& cfg) {
  const Resolved r = resolve(cfg);
  const Case& c = *r.c;
  const auto points = evaluation_grid(r.eval_grid, r.a);

  SupportedFunction target = scale_support(c.f, r.a);
  std::optional<SupportedFunction> g;
  QuadratureSpec outer = cfg.quadrature;
  if (c.convolution) {
    g = scale_support(*c.g, r.a);
    target = convolution_target(target, *g);
    if (!target.f) throw InvalidArgument("bad convolution target");
    outer.radial_nodes = std::min(outer.radial_nodes, 128);
    outer.angular_nodes = std::min(outer.angular_nodes, 256);
  }
  Spectrum reference = fb_coefficient_block(target, r.M, r.N, outer);
  reference.a = r.a;
  const std::vector<cplx> ref_values = iffbt(reference, points);
  const double jacobian = c.convolution ? r.a * r.a : 1.0;

  if (cfg.grid_dir) {
    std::filesystem::create_directories(*cfg.grid_dir);
    ComplexMatrix vals(r.eval_grid, r.eval_grid);
    for (std::size_t i = 0; i < points.size(); ++i) vals.data()[i] = jacobian * ref_values[i];
    write_field(grid_file(*cfg.grid_dir, c.name, "reference"), SampledField(Grid(r.eval_grid), vals, r.a));
  }

  StudyReport report;
  report.case_name = c.name;
  std::ostringstream csv, summary;
  csv << "K,max_abs_err,mode_err\n";
  for (int K : r.ks) {
    const int side = 2 * K + 1;
    Spectrum spec;
    if (c.convolution) {
      spec = ffbt_conv_block(sample_scaled(c.f.f, r.a, side), sample_scaled(c.g->f, r.a, side), r.M, r.N, K);
    } else {
      spec = analyze_scaled(c.f.f, r.a, r.M, r.N, K);
    }
    const std::vector<cplx> values = iffbt(spec, points);
    StudyRow row;
    row.K = K;
    double sq = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double d = std::abs(values[i] - ref_values[i]);
      row.max_abs_err = std::max(row.max_abs_err, d);
      sq += d * d;
    }
    row.l2_err = std::sqrt(sq / double(points.size()));
    for (std::size_t t = 0; t < spec.size(); ++t)
      row.mode_err = std::max(row.mode_err, std::abs(spec.coeffs[t] - reference.coeffs[t]));
    report.rows.push_back(row);
    csv << K << ',' << format_real(row.max_abs_err) << ',' << format_real(row.mode_err) << '\n';
    summary << "K=" << K << " max_abs_err=" << format_real(row.max_abs_err) << " l2_err=" << format_real(row.l2_err)
            << " mode_err=" << format_real(row.mode_err) << '\n';

    if (cfg.grid_dir) {
      ComplexMatrix vals(r.eval_grid, r.eval_grid);
      for (std::size_t i = 0; i < points.size(); ++i) vals.data()[i] = jacobian * values[i];
      write_field(grid_file(*cfg.grid_dir, c.name, "K" + std::to_string(K)),
                  SampledField(Grid(r.eval_grid), vals, r.a));
    }
  }

  std::vector<double> metric;
  for (const auto& row : report.rows) metric.push_back(c.indicator ? row.l2_err : row.max_abs_err);
  report.monotone = strictly_decreasing(metric);
  summary << "case=" << c.name << " M=" << r.M << " N=" << r.N << " a=" << format_real(r.a)
          << " eval_grid=" << r.eval_grid << " K[M,N]=" << k_min_block(r.M, r.N);
  if (c.convolution) summary << " jacobian=" << format_real(jacobian);
  summary << "\ncheck " << (c.indicator ? "l2_err" : "max_abs_err") << " decreasing: "
          << (report.monotone ? "pass" : "FAIL") << '\n';
  report.csv = csv.str();
  report.summary = summary.str();
  if (cfg.csv) write_text(*cfg.csv, report.csv);
  return report;
}

ConvStudyReport run_conv_study(const StudyConfig& cfg) {
  const Resolved r = resolve(cfg);
  const Case& c = *r.c;
  if (!c.convolution) throw InvalidArgument("case '" + c.name + "' is not a convolution case");
  const SupportedFunction f = scale_support(c.f, r.a);
  const SupportedFunction g = scale_support(*c.g, r.a);

  ConvStudyReport report;
  report.case_name = c.name;
  std::ostringstream csv, summary;
  csv << "K,m,n,gap\n";
  std::vector<double> worst;
  for (int K : r.ks) {
    const int side = 2 * K + 1;
    const Spectrum unified = ffbt_conv_block(sample(f.f, side), sample(g.f, side), r.M, r.N, K);
    const Spectrum sampled = ffbt_block(sample_direct_convolution(f, g, side, kInnerConvolution), r.M, r.N, K);
    double w = 0.0;
    for (int m = -r.M; m <= r.M; ++m) {
      for (int n = 1; n <= r.N; ++n) {
        const double gap = std::abs(unified.at(m, n) - sampled.at(m, n));
        report.rows.push_back({K, m, n, gap});
        csv << K << ',' << m << ',' << n << ',' << format_real(gap) << '\n';
        w = std::max(w, gap);
      }
    }
    worst.push_back(w);
    summary << "K=" << K << " max_gap=" << format_real(w) << '\n';
  }
  report.monotone = strictly_decreasing(worst);
  summary << "case=" << c.name << " M=" << r.M << " N=" << r.N << " a=" << format_real(r.a)
          << "\ncheck max_gap decreasing: " << (report.monotone ? "pass" : "FAIL") << '\n';
  report.csv = csv.str();
  report.summary = summary.str();
  if (cfg.csv) write_text(*cfg.csv, report.csv);
  return report;
}

EpsilonPlan epsilon_plan(double eps, const ErrorBudget& budget, const PlanRequest& req) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("epsilon must be a positive number");
  auto need = [](const std::optional<double>& v, const char* what) {
    if (!v) throw InvalidArgument(std::string("this plan needs ") + what);
    if (!(*v > 0.0)) throw InvalidArgument(std::string(what) + " must be positive");
    return *v;
  };
  EpsilonPlan plan;
  switch (req.mode) {
    case PlanMode::single:
      plan.constant = 2.0 * need(budget.c_f, "c_f = max(96 |grad f|_inf / pi, |f|_A)") *
                      mode_constants(req.idx, budget.beta_cutoff).gamma;
      plan.threshold = k_min(req.idx);
      break;
    case PlanMode::block:
      plan.constant = 2.0 * need(budget.c_f, "c_f = max(96 |grad f|_inf / pi, |f|_A)") *
                      block_constant(req.M, req.N, budget.beta_cutoff);
      plan.threshold = k_min_block(req.M, req.N);
      break;
    case PlanMode::conv:
      plan.constant = 2.0 * need(budget.d_fg, "the convolution constant d_fg") *
                      mode_constants(req.idx, budget.beta_cutoff).gamma;
      plan.threshold = k_min(req.idx);
      break;
    case PlanMode::conv_block:
      plan.constant = 2.0 * need(budget.d_fg, "the convolution constant d_fg") *
                      block_constant(req.M, req.N, budget.beta_cutoff);
      plan.threshold = k_min_block(req.M, req.N);
      break;
    case PlanMode::fourier:
      plan.constant = 96.0 * need(budget.grad_bound, "a bound on |grad f|_inf") / std::numbers::pi;
      plan.threshold = 1;
      break;
  }
  const double k = std::max(plan.constant / eps, double(plan.threshold));
  if (k > 1e8) throw InvalidArgument("epsilon too small: K would exceed 1e8");
  plan.K = int(std::ceil(k));
  plan.L = 2 * plan.K + 1;
  return plan;
}

}  // namespace ffbt
