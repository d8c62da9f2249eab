#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ffbt/cases.hpp"
#include "ffbt/coefficients.hpp"
#include "ffbt/container.hpp"
#include "ffbt/convolution.hpp"
#include "ffbt/error.hpp"
#include "ffbt/oracle.hpp"
#include "ffbt/parallel.hpp"
#include "ffbt/study.hpp"
#include "ffbt/transform.hpp"

namespace fs = std::filesystem;
using namespace ffbt;

namespace {

struct Globals {
  unsigned threads = 0;
  std::uint64_t seed = 0;
  std::string format = "csv";
};

// Small tabular emitter honoring --format.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render(const std::string& format) const {
    std::string out;
    if (format == "json") {
      out = "[";
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        out += r ? ",\n{" : "\n{";
        for (std::size_t c = 0; c < columns_.size(); ++c) {
          if (c) out += ',';
          out += "\"" + columns_[c] + "\":" + rows_[r][c];
        }
        out += '}';
      }
      out += "\n]\n";
      return out;
    }
    for (std::size_t c = 0; c < columns_.size(); ++c) out += (c ? "," : "") + columns_[c];
    out += '\n';
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + row[c];
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

void emit(const std::string& text, const std::optional<fs::path>& out) {
  if (out)
    write_text(*out, text);
  else
    std::cout << text;
}

std::vector<int> parse_k_list(const std::string& s) {
  std::vector<int> ks;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      ks.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw InvalidArgument("bad K list entry '" + item + "'");
    }
  }
  return ks;
}

SampledField field_for_case(const std::string& name, const std::string& factor, std::optional<double> a, int side,
                            std::uint64_t seed) {
  if (name == "noise") return sample_scaled(noise_function(seed), a.value_or(1.0), side);
  const Case& c = find_case(name);
  const SupportedFunction* f = &c.f;
  if (factor == "g") {
    if (!c.g) throw InvalidArgument("case '" + name + "' has no second factor");
    f = &*c.g;
  }
  return sample_scaled(f->f, a.value_or(c.a), side);
}

std::string cplx_re(cplx v) { return format_real(v.real()); }
std::string cplx_im(cplx v) { return format_real(v.imag()); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite Fourier-Bessel transforms on disks"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--threads", g.threads, "worker threads (0 = hardware)");
  app.add_option("--seed", g.seed, "seed for the noise generator");
  app.add_option("--format", g.format, "tabular output format")->check(CLI::IsMember({"csv", "json"}));

  // sample
  auto* cmd_sample = app.add_subcommand("sample", "sample a registry case (or 'noise') into a field file");
  std::string s_case, s_factor = "f";
  int s_grid = 0;
  std::optional<double> s_a;
  fs::path s_out;
  cmd_sample->add_option("--case", s_case, "case name")->required();
  cmd_sample->add_option("--factor", s_factor, "f or g for convolution cases")->check(CLI::IsMember({"f", "g"}));
  cmd_sample->add_option("--grid", s_grid, "grid side L")->required();
  cmd_sample->add_option("--a", s_a, "half width (default: case value)");
  cmd_sample->add_option("--output", s_out, "field file")->required();

  // zeros
  auto* cmd_zeros = app.add_subcommand("zeros", "tabulate Bessel zeros");
  int z_mmax = 0, z_nmax = 1;
  std::optional<fs::path> z_out;
  cmd_zeros->add_option("--m-max", z_mmax)->required()->check(CLI::NonNegativeNumber);
  cmd_zeros->add_option("--n-max", z_nmax)->required()->check(CLI::PositiveNumber);
  cmd_zeros->add_option("--out", z_out);

  // kernel
  auto* cmd_kernel = app.add_subcommand("kernel", "precompute and store Q and Qx");
  int k_m = 0, k_n = 1, k_K = 1;
  fs::path k_dir;
  cmd_kernel->add_option("--m", k_m)->required();
  cmd_kernel->add_option("--n", k_n)->required();
  cmd_kernel->add_option("--K", k_K)->required();
  cmd_kernel->add_option("--out", k_dir, "cache directory")->required();

  // fourier
  auto* cmd_fourier = app.add_subcommand("fourier", "finite Fourier transform of a field");
  fs::path f_in;
  int f_kmax = 0;
  std::optional<fs::path> f_out;
  cmd_fourier->add_option("--input", f_in)->required();
  cmd_fourier->add_option("--kmax", f_kmax)->required()->check(CLI::NonNegativeNumber);
  cmd_fourier->add_option("--out", f_out);

  // analyze
  auto* cmd_analyze = app.add_subcommand("analyze", "FFBT block of a field");
  fs::path a_in, a_out;
  int a_M = 0, a_N = 1, a_K = 1;
  cmd_analyze->add_option("--input", a_in)->required();
  cmd_analyze->add_option("--M", a_M)->required();
  cmd_analyze->add_option("--N", a_N)->required();
  cmd_analyze->add_option("--K", a_K)->required();
  cmd_analyze->add_option("--out", a_out)->required();

  // synthesize
  auto* cmd_synth = app.add_subcommand("synthesize", "iFFBT of a spectrum on an evaluation grid");
  fs::path y_spec, y_out;
  int y_grid = 0;
  cmd_synth->add_option("--spec", y_spec)->required();
  cmd_synth->add_option("--eval-grid", y_grid, "default 2K+1");
  cmd_synth->add_option("--out", y_out)->required();

  // steer
  auto* cmd_steer = app.add_subcommand("steer", "steerability residual of a registry case");
  std::string t_case = "bump";
  int t_m = 0, t_n = 1;
  std::string t_ks = "8,16,32";
  double t_phi = 0.0;
  cmd_steer->add_option("--case", t_case);
  cmd_steer->add_option("--m", t_m)->required();
  cmd_steer->add_option("--n", t_n)->required();
  cmd_steer->add_option("--K-list", t_ks);
  cmd_steer->add_option("--phi", t_phi, "rotation angle in radians")->required();

  // convolve
  auto* cmd_conv = app.add_subcommand("convolve", "iFFBT of f*g from two field files");
  fs::path c_f, c_g, c_out;
  int c_M = 0, c_N = 1, c_K = 1, c_grid = 0;
  std::optional<double> c_a;
  std::string c_path = "auto";
  cmd_conv->add_option("--f", c_f)->required();
  cmd_conv->add_option("--g", c_g)->required();
  cmd_conv->add_option("--M", c_M)->required();
  cmd_conv->add_option("--N", c_N)->required();
  cmd_conv->add_option("--K", c_K)->required();
  cmd_conv->add_option("--a", c_a, "must match the fields' half width");
  cmd_conv->add_option("--eval-grid", c_grid, "default 2K+1");
  cmd_conv->add_option("--path", c_path)->check(CLI::IsMember({"auto", "two-stage", "trace"}));
  cmd_conv->add_option("--out", c_out)->required();

  // study / conv-study
  StudyConfig st;
  std::string st_ks;
  std::optional<fs::path> st_out;
  auto add_study_options = [&](CLI::App* cmd) {
    cmd->add_option("--case", st.case_name)->required();
    cmd->add_option("--K-list", st_ks, "comma separated, strictly increasing");
    cmd->add_option("--M", st.M);
    cmd->add_option("--N", st.N);
    cmd->add_option("--a", st.a);
    cmd->add_option("--out", st_out, "CSV report");
  };
  auto* cmd_study = app.add_subcommand("study", "convergence study of a registry case");
  add_study_options(cmd_study);
  cmd_study->add_option("--eval-grid", st.eval_grid);
  cmd_study->add_option("--grid-dir", st.grid_dir, "directory for synthesized field files");
  auto* cmd_cstudy = app.add_subcommand("conv-study", "unified vs sampled convolution FFBT gaps");
  add_study_options(cmd_cstudy);

  // oracle
  auto* cmd_oracle = app.add_subcommand("oracle", "quadrature reference values");
  std::string o_op, o_case = "bump";
  int o_m = 0, o_n = 1, o_k1 = 0, o_k2 = 0, o_cutoff = 16, o_M = 2, o_N = 2;
  double o_x = 0.0, o_y = 0.0, o_r = 1.0, o_s = 1.0, o_d = 0.0;
  QuadratureSpec o_q;
  cmd_oracle->add_option("--op", o_op)
      ->required()
      ->check(CLI::IsMember({"fb-coefficient", "fourier-integral", "closed-form", "direct-convolution",
                             "partial-sum", "lens-area"}));
  cmd_oracle->add_option("--case", o_case);
  cmd_oracle->add_option("--m", o_m);
  cmd_oracle->add_option("--n", o_n);
  cmd_oracle->add_option("--k1", o_k1);
  cmd_oracle->add_option("--k2", o_k2);
  cmd_oracle->add_option("--cutoff", o_cutoff);
  cmd_oracle->add_option("--M", o_M);
  cmd_oracle->add_option("--N", o_N);
  cmd_oracle->add_option("--x", o_x);
  cmd_oracle->add_option("--y", o_y);
  cmd_oracle->add_option("--r", o_r, "lens-area: first radius");
  cmd_oracle->add_option("--s", o_s, "lens-area: second radius");
  cmd_oracle->add_option("--d", o_d, "lens-area: center distance");
  cmd_oracle->add_option("--radial", o_q.radial_nodes);
  cmd_oracle->add_option("--angular", o_q.angular_nodes);

  // epsilon-plan
  auto* cmd_plan = app.add_subcommand("epsilon-plan", "band limit K for a target accuracy");
  double p_eps = 0.0;
  std::string p_mode = "single";
  PlanRequest p_req;
  ErrorBudget p_budget;
  cmd_plan->add_option("--eps", p_eps)->required();
  cmd_plan->add_option("--mode", p_mode)->check(CLI::IsMember({"single", "block", "conv", "conv-block", "fourier"}));
  cmd_plan->add_option("--m", p_req.idx.m);
  cmd_plan->add_option("--n", p_req.idx.n);
  cmd_plan->add_option("--M", p_req.M);
  cmd_plan->add_option("--N", p_req.N);
  cmd_plan->add_option("--c-f", p_budget.c_f);
  cmd_plan->add_option("--d-fg", p_budget.d_fg);
  cmd_plan->add_option("--grad-bound", p_budget.grad_bound);
  cmd_plan->add_option("--beta-cutoff", p_budget.beta_cutoff);

  CLI11_PARSE(app, argc, argv);
  set_thread_count(g.threads);

  try {
    if (*cmd_sample) {
      write_field(s_out, field_for_case(s_case, s_factor, s_a, s_grid, g.seed));
    } else if (*cmd_zeros) {
      Table t({"m", "n", "z"});
      for (int m = 0; m <= z_mmax; ++m)
        for (int n = 1; n <= z_nmax; ++n)
          t.add({std::to_string(m), std::to_string(n), format_real(bessel_zero(m, n))});
      emit(t.render(g.format), z_out);
    } else if (*cmd_kernel) {
      KernelCache cache(k_dir);
      cache.get({k_m, k_n}, k_K);
      std::cout << (k_dir / kernel_file_name(KernelKind::plain, {k_m, k_n}, k_K)).string() << '\n'
                << (k_dir / kernel_file_name(KernelKind::cross, {k_m, k_n}, k_K)).string() << '\n';
    } else if (*cmd_fourier) {
      const SampledField field = read_field(f_in);
      Table t({"k1", "k2", "re", "im"});
      for (int k1 = -f_kmax; k1 <= f_kmax; ++k1) {
        for (int k2 = -f_kmax; k2 <= f_kmax; ++k2) {
          const cplx v = finite_fourier_disk(field, {k1, k2});
          t.add({std::to_string(k1), std::to_string(k2), cplx_re(v), cplx_im(v)});
        }
      }
      emit(t.render(g.format), f_out);
    } else if (*cmd_analyze) {
      write_spectrum(a_out, ffbt_block(read_field(a_in), a_M, a_N, a_K));
    } else if (*cmd_synth) {
      const Spectrum spec = read_spectrum(y_spec);
      const int side = y_grid > 0 ? y_grid : 2 * spec.K + 1;
      const auto points = evaluation_grid(side, spec.a);
      const auto values = iffbt(spec, points);
      ComplexMatrix m(side, side);
      std::copy(values.begin(), values.end(), m.data());
      write_field(y_out, SampledField(Grid(side), m, spec.a));
    } else if (*cmd_steer) {
      const Case& c = find_case(t_case);
      Table t({"K", "residual"});
      for (int K : parse_k_list(t_ks)) {
        const double a = c.a;
        const Function2D scaled = [f = c.f.f, a](double x, double y) { return f(a * x, a * y); };
        t.add({std::to_string(K), format_real(steer_residual(scaled, {t_m, t_n}, K, t_phi))});
      }
      std::cout << t.render(g.format);
    } else if (*cmd_conv) {
      const SampledField f = read_field(c_f);
      const SampledField gg = read_field(c_g);
      if (c_a && *c_a != f.half_width())
        throw InvalidArgument("--a does not match the half width stored in the field files");
      const double a = f.half_width();
      const int side = c_grid > 0 ? c_grid : 2 * c_K + 1;
      SynthesisOptions opt;
      opt.path = c_path == "trace" ? SynthesisPath::trace
                 : c_path == "two-stage" ? SynthesisPath::two_stage
                                         : SynthesisPath::automatic;
      const auto values = iffbt_conv(f, gg, c_M, c_N, c_K, evaluation_grid(side, a), opt);
      ComplexMatrix m(side, side);
      for (std::size_t i = 0; i < values.size(); ++i) m.data()[i] = a * a * values[i];
      write_field(c_out, SampledField(Grid(side), m, a));
      std::cout << "a=" << format_real(a) << " jacobian=" << format_real(a * a)
                << " (values are a^2 S^K[f~,g~](x/a))\n";
    } else if (*cmd_study || *cmd_cstudy) {
      if (!st_ks.empty()) st.k_list = parse_k_list(st_ks);
      st.csv = st_out;
      bool ok;
      if (*cmd_study) {
        const StudyReport r = run_study(st);
        if (!st_out) std::cout << r.csv;
        std::cerr << r.summary;
        ok = r.monotone;
      } else {
        const ConvStudyReport r = run_conv_study(st);
        if (!st_out) std::cout << r.csv;
        std::cerr << r.summary;
        ok = r.monotone;
      }
      return ok ? 0 : 1;
    } else if (*cmd_oracle) {
      if (o_op == "lens-area") {
        std::cout << format_real(lens_area(o_r, o_s, o_d)) << '\n';
        return 0;
      }
      const Case& c = find_case(o_case);
      const SupportedFunction f = scale_support(c.f, c.a);
      cplx v{};
      if (o_op == "fb-coefficient") {
        v = fb_coefficient_quadrature(f, {o_m, o_n}, o_q);
      } else if (o_op == "fourier-integral") {
        v = fourier_integral_quadrature(f, {o_k1, o_k2}, o_q);
      } else if (o_op == "closed-form") {
        v = truncated_closed_form(f, {o_m, o_n}, o_cutoff, o_q);
      } else if (o_op == "direct-convolution") {
        if (!c.g) throw InvalidArgument("case '" + o_case + "' is not a convolution case");
        v = direct_convolution(f, scale_support(*c.g, c.a), {o_x, o_y}, o_q);
      } else {
        v = partial_sum_reference(f, o_M, o_N, o_q)({o_x, o_y});
      }
      Table t({"re", "im"});
      t.add({cplx_re(v), cplx_im(v)});
      std::cout << t.render(g.format);
    } else if (*cmd_plan) {
      p_req.mode = p_mode == "single"       ? PlanMode::single
                   : p_mode == "block"      ? PlanMode::block
                   : p_mode == "conv"       ? PlanMode::conv
                   : p_mode == "conv-block" ? PlanMode::conv_block
                                            : PlanMode::fourier;
      const EpsilonPlan plan = epsilon_plan(p_eps, p_budget, p_req);
      Table t({"K", "L", "constant", "threshold"});
      t.add({std::to_string(plan.K), std::to_string(plan.L), format_real(plan.constant),
             std::to_string(plan.threshold)});
      std::cout << t.render(g.format);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
