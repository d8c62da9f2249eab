#include "ffbt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ffbt/coefficients.hpp"
#include "ffbt/error.hpp"
#include "ffbt/parallel.hpp"

namespace ffbt {

namespace {

constexpr double kPi = std::numbers::pi;

// Weighted nodes of a polar rule over a disk: y = center + r (cos t, sin t),
// weight includes the Jacobian r.
struct PolarRule {
  std::vector<double> r, rw;  // radial nodes and weights (times r)
  std::vector<double> cos_t, sin_t;
  double tw = 0.0;  // angular weight
};

PolarRule polar_rule(double radius, const QuadratureSpec& q) {
  q.validate();
  PolarRule rule;
  const GaussRule g = gauss_legendre(q.radial_nodes);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double r = 0.5 * radius * (g.nodes[i] + 1.0);
    rule.r.push_back(r);
    rule.rw.push_back(0.5 * radius * g.weights[i] * r);
  }
  const int na = q.angular_nodes;
  for (int j = 0; j < na; ++j) {
    const double t = 2.0 * kPi * j / na;
    rule.cos_t.push_back(std::cos(t));
    rule.sin_t.push_back(std::sin(t));
  }
  rule.tw = 2.0 * kPi / na;
  return rule;
}

// f on the polar rule; entry i * na + j.
std::vector<cplx> polar_samples(const Function2D& f, Point c, const PolarRule& rule) {
  const std::size_t nr = rule.r.size(), na = rule.cos_t.size();
  std::vector<cplx> v(nr * na);
  parallel_for(nr, [&](std::size_t i) {
    for (std::size_t j = 0; j < na; ++j)
      v[i * na + j] = f(c.x + rule.r[i] * rule.cos_t[j], c.y + rule.r[i] * rule.sin_t[j]);
  });
  return v;
}

bool centered(const SupportedFunction& f) { return f.center.x == 0.0 && f.center.y == 0.0; }

// Radius of the polar rule about the origin for integrals against Psi.
double disk_radius(const SupportedFunction& f) { return centered(f) ? std::min(f.radius, 1.0) : 1.0; }

}  // namespace

void QuadratureSpec::validate() const {
  if (radial_nodes < 8 || angular_nodes < 8 || cartesian_nodes < 8)
    throw InvalidArgument("quadrature node counts must be >= 8");
}

SupportedFunction SupportedFunction::disk_indicator(double r, Point c) {
  SupportedFunction s([r, c](double x, double y) { return cplx(std::hypot(x - c.x, y - c.y) <= r ? 1.0 : 0.0); },
                      c, r);
  s.indicator_radius = r;
  return s;
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre rule needs n >= 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = std::legendre(n, x);
      const double p1 = std::legendre(n - 1, x);
      dp = n * (x * p - p1) / (x * x - 1.0);
      const double step = p / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double p1 = std::legendre(n - 1, x);
    dp = n * (x * std::legendre(n, x) - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

Spectrum fb_coefficient_block(const SupportedFunction& f, int M, int N, const QuadratureSpec& q) {
  const PolarRule rule = polar_rule(disk_radius(f), q);
  const std::vector<cplx> v = polar_samples(f.f, {}, rule);
  const std::size_t nr = rule.r.size(), na = rule.cos_t.size();
  Spectrum spec(M, N, 0, 1.0);

  // A(i, m) = sum_j f(r_i, t_j) e^{-i m t_j}
  std::vector<cplx> A(nr * std::size_t(2 * M + 1));
  parallel_for(nr, [&](std::size_t i) {
    for (int m = -M; m <= M; ++m) {
      cplx s{};
      for (std::size_t j = 0; j < na; ++j) {
        const double t = 2.0 * kPi * double(j) / double(na);
        s += v[i * na + j] * std::polar(1.0, -m * t);
      }
      A[i * std::size_t(2 * M + 1) + std::size_t(m + M)] = s;
    }
  });
  const double scale = rule.tw / std::sqrt(2.0 * kPi);
  parallel_for(spec.size(), [&](std::size_t t) {
    const int m = int(t / std::size_t(N)) - M;
    const int n = int(t % std::size_t(N)) + 1;
    cplx s{};
    for (std::size_t i = 0; i < nr; ++i)
      s += rule.rw[i] * normalized_radial({m, n}, rule.r[i]) * A[i * std::size_t(2 * M + 1) + std::size_t(m + M)];
    spec.coeffs[t] = scale * s;
  });
  return spec;
}

cplx fb_coefficient_quadrature(const SupportedFunction& f, HarmonicIndex idx, const QuadratureSpec& q) {
  const PolarRule rule = polar_rule(disk_radius(f), q);
  const std::vector<cplx> v = polar_samples(f.f, {}, rule);
  const std::size_t nr = rule.r.size(), na = rule.cos_t.size();
  std::vector<cplx> e(na);
  for (std::size_t j = 0; j < na; ++j) e[j] = std::polar(1.0, -idx.m * 2.0 * kPi * double(j) / double(na));
  cplx s{};
  for (std::size_t i = 0; i < nr; ++i) {
    cplx a{};
    for (std::size_t j = 0; j < na; ++j) a += v[i * na + j] * e[j];
    s += rule.rw[i] * normalized_radial(idx, rule.r[i]) * a;
  }
  return rule.tw / std::sqrt(2.0 * kPi) * s;
}

cplx fourier_integral_quadrature(const SupportedFunction& f, FrequencyIndex k, const QuadratureSpec& q) {
  const PolarRule rule = polar_rule(f.radius, q);
  const std::vector<cplx> v = polar_samples(f.f, f.center, rule);
  const std::size_t nr = rule.r.size(), na = rule.cos_t.size();
  cplx s{};
  for (std::size_t i = 0; i < nr; ++i) {
    cplx a{};
    for (std::size_t j = 0; j < na; ++j) {
      const double y1 = f.center.x + rule.r[i] * rule.cos_t[j];
      const double y2 = f.center.y + rule.r[i] * rule.sin_t[j];
      a += v[i * na + j] * std::polar(1.0, -kPi * (k.k1 * y1 + k.k2 * y2));
    }
    s += rule.rw[i] * a;
  }
  return rule.tw * s;
}

ComplexMatrix fourier_integral_table(const SupportedFunction& f, int kmax, const QuadratureSpec& q) {
  if (kmax < 0) throw InvalidArgument("kmax must be >= 0");
  const PolarRule rule = polar_rule(f.radius, q);
  const std::vector<cplx> v = polar_samples(f.f, f.center, rule);
  const std::size_t nr = rule.r.size(), na = rule.cos_t.size();
  const std::size_t side = std::size_t(2 * kmax + 1);

  // T = sum_t w_t f(y_t) a_t b_t^T with a_t(k1) = exp(-pi i k1 y1), b_t(k2) = exp(-pi i k2 y2),
  // accumulated per radial ring and reduced in ring order.
  std::vector<std::vector<double>> partial(nr);
  parallel_for(nr, [&](std::size_t i) {
    std::vector<double> tr(side * side, 0.0), ti(side * side, 0.0);
    std::vector<double> ar(side), ai(side), br(side), bi(side);
    auto powers = [&](double y, cplx scale, std::vector<double>& re, std::vector<double>& im) {
      const cplx step = std::polar(1.0, -kPi * y);
      cplx p = scale * std::polar(1.0, kPi * kmax * y);
      for (std::size_t c = 0; c < side; ++c) {
        re[c] = p.real();
        im[c] = p.imag();
        p *= step;
      }
    };
    for (std::size_t j = 0; j < na; ++j) {
      const cplx w = rule.tw * rule.rw[i] * v[i * na + j];
      if (w == cplx{}) continue;
      powers(f.center.x + rule.r[i] * rule.cos_t[j], w, ar, ai);
      powers(f.center.y + rule.r[i] * rule.sin_t[j], 1.0, br, bi);
      for (std::size_t r = 0; r < side; ++r) {
        const double xr = ar[r], xi = ai[r];
        double* rowr = tr.data() + r * side;
        double* rowi = ti.data() + r * side;
        for (std::size_t c = 0; c < side; ++c) {
          rowr[c] += xr * br[c] - xi * bi[c];
          rowi[c] += xr * bi[c] + xi * br[c];
        }
      }
    }
    tr.insert(tr.end(), ti.begin(), ti.end());
    partial[i] = std::move(tr);
  });
  ComplexMatrix out(side, side);
  for (const auto& part : partial)
    for (std::size_t e = 0; e < side * side; ++e) out.data()[e] += cplx(part[e], part[side * side + e]);
  return out;
}

cplx truncated_closed_form(const SupportedFunction& f, HarmonicIndex idx, int cutoff, const QuadratureSpec& q) {
  if (cutoff < k_min(idx)) throw InvalidArgument("cutoff below K_{m,n}");
  return truncated_closed_form(fourier_integral_table(f, cutoff, q), idx);
}

cplx truncated_closed_form(const ComplexMatrix& table, HarmonicIndex idx) {
  if (!table.square() || table.rows() % 2 == 0) throw InvalidArgument("table must be (2 cutoff + 1) square");
  const int cutoff = int(table.rows() / 2);
  if (cutoff < k_min(idx)) throw InvalidArgument("cutoff below K_{m,n}");
  const CoefficientKernel kernel = build_kernel(idx, cutoff);
  const int side = 2 * cutoff + 1;
  cplx s{};
  for (int k1 = -cutoff; k1 <= cutoff; ++k1)
    for (int k2 = -cutoff; k2 <= cutoff; ++k2)
      s += kernel.q_cross(fold_index(k2, side), fold_index(k1, side)) * table(k1 + cutoff, k2 + cutoff);
  return s;
}

double lens_area(double r, double s, double d) {
  if (r < 0.0 || s < 0.0 || d < 0.0) throw InvalidArgument("lens_area needs nonnegative radii and distance");
  if (d >= r + s) return 0.0;
  if (d <= std::abs(r - s)) return kPi * std::min(r, s) * std::min(r, s);
  const double a = std::clamp((d * d + r * r - s * s) / (2.0 * d * r), -1.0, 1.0);
  const double b = std::clamp((d * d + s * s - r * r) / (2.0 * d * s), -1.0, 1.0);
  const double k = (-d + r + s) * (d + r - s) * (d - r + s) * (d + r + s);
  return r * r * std::acos(a) + s * s * std::acos(b) - 0.5 * std::sqrt(std::max(k, 0.0));
}

cplx direct_convolution(const SupportedFunction& f, const SupportedFunction& g, Point x, const QuadratureSpec& q) {
  if (f.indicator_radius && g.indicator_radius) {
    const double d = std::hypot(x.x - g.center.x - f.center.x, x.y - g.center.y - f.center.y);
    return lens_area(*f.indicator_radius, *g.indicator_radius, d);
  }
  return direct_convolution_quadrature(f, g, x, q);
}

cplx direct_convolution_quadrature(const SupportedFunction& f, const SupportedFunction& g, Point x,
                                   const QuadratureSpec& q) {
  q.validate();
  // g(x - y) != 0 only for y in the disk about w + c_f of radius s, where
  // y = c_f + rho u.
  const double wx = x.x - g.center.x - f.center.x;
  const double wy = x.y - g.center.y - f.center.y;
  const double R = f.radius, s = g.radius;
  const double d = std::hypot(wx, wy);
  if (d >= R + s) return {0.0, 0.0};

  std::vector<double> cuts{0.0, 2.0 * kPi};
  const double phi = std::atan2(wy, wx);
  auto add_cut = [&](double t) {
    t = std::fmod(t, 2.0 * kPi);
    if (t < 0.0) t += 2.0 * kPi;
    cuts.push_back(t);
  };
  if (d > s) {
    const double h = std::acos(std::sqrt(d * d - s * s) / d);
    add_cut(phi + h);
    add_cut(phi - h);
  }
  if (d > 0.0 && d > std::abs(R - s)) {
    const double c = std::clamp((d * d + R * R - s * s) / (2.0 * d * R), -1.0, 1.0);
    add_cut(phi + std::acos(c));
    add_cut(phi - std::acos(c));
  }
  std::sort(cuts.begin(), cuts.end());

  const int pieces = int(cuts.size()) - 1;
  const GaussRule ga = gauss_legendre(std::max(8, q.angular_nodes / std::max(1, pieces)));
  const GaussRule gr = gauss_legendre(std::max(8, q.radial_nodes / 2));

  auto radial = [&](double t) {
    const double ux = std::cos(t), uy = std::sin(t);
    const double b = wx * ux + wy * uy;
    const double disc = b * b - d * d + s * s;
    if (disc < 0.0) return cplx{};
    const double lo = std::max(0.0, b - std::sqrt(disc));
    const double hi = std::min(R, b + std::sqrt(disc));
    if (hi <= lo) return cplx{};
    cplx sum{};
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < gr.nodes.size(); ++i) {
      const double rho = mid + half * gr.nodes[i];
      const double y1 = f.center.x + rho * ux, y2 = f.center.y + rho * uy;
      sum += gr.weights[i] * rho * f.f(y1, y2) * g.f(x.x - y1, x.y - y2);
    }
    return half * sum;
  };

  cplx total{};
  for (int p = 0; p < pieces; ++p) {
    const double a = cuts[p], b = cuts[p + 1];
    if (b - a <= 0.0) continue;
    const double half = 0.5 * (b - a), mid = 0.5 * (b + a);
    cplx sum{};
    for (std::size_t j = 0; j < ga.nodes.size(); ++j) sum += ga.weights[j] * radial(mid + half * ga.nodes[j]);
    total += half * sum;
  }
  return total;
}

PartialSumReference partial_sum_reference(const SupportedFunction& f, int M, int N, const QuadratureSpec& q) {
  return PartialSumReference(fb_coefficient_block(f, M, N, q));
}

}  // namespace ffbt
