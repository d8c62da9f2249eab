#include "ffbt/cases.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "ffbt/error.hpp"

namespace ffbt {

namespace {

// (1 - r^2/R^2)^p (1 + 0.5 x + 0.25 y + 0.75 x y) on the disk of radius R.
struct Bump {
  double R;
  int p;

  double poly(double x, double y) const { return 1.0 + 0.5 * x + 0.25 * y + 0.75 * x * y; }

  cplx operator()(double x, double y) const {
    const double u = 1.0 - (x * x + y * y) / (R * R);
    if (u <= 0.0) return 0.0;
    return std::pow(u, p) * poly(x, y);
  }

  std::array<double, 2> gradient(double x, double y) const {
    const double u = 1.0 - (x * x + y * y) / (R * R);
    if (u <= 0.0) return {0.0, 0.0};
    const double up = std::pow(u, p);
    const double dup = p * std::pow(u, p - 1);
    const double q = poly(x, y);
    return {dup * (-2.0 * x / (R * R)) * q + up * (0.5 + 0.75 * y),
            dup * (-2.0 * y / (R * R)) * q + up * (0.25 + 0.75 * x)};
  }
};

// Plain radial bump (1 - |x - c|^2/R^2)^2.
Function2D radial_bump(Point c, double R) {
  return [c, R](double x, double y) {
    const double u = 1.0 - ((x - c.x) * (x - c.x) + (y - c.y) * (y - c.y)) / (R * R);
    return cplx(u > 0.0 ? u * u : 0.0);
  };
}

Case make_case(std::string name, std::string description, bool convolution, bool indicator, SupportedFunction f) {
  Case c{std::move(name), std::move(description), convolution, indicator, std::move(f), {}, {}, 1.0, 2, 2, 3, {}, 41};
  return c;
}

std::vector<Case> build_registry() {
  std::vector<Case> cases;

  {
    Case c = make_case("harmonic-sum", "Psi_{1,2} + Psi_{2,1}", false, false,
           SupportedFunction([](double x, double y) { return polar_harmonic({1, 2}, x, y) + polar_harmonic({2, 1}, x, y); }));
    c.M = 2, c.N = 2, c.K = 3, c.k_list = {3, 6, 12}, c.eval_grid = 41;
    cases.push_back(c);
  }
  {
    Case c = make_case("gaussian-pair", "exp(-x'Ax) + i exp(-x'Bx), A = diag(10,20), B = diag(20,10)", false, false,
           SupportedFunction([](double x, double y) {
             return cplx(std::exp(-(10.0 * x * x + 20.0 * y * y)), std::exp(-(20.0 * x * x + 10.0 * y * y)));
           }));
    c.M = 5, c.N = 5, c.K = 8, c.k_list = {8, 16, 32}, c.eval_grid = 51;
    cases.push_back(c);
  }
  {
    Case c = make_case("exp-sin", "exp(-xy) + i sin(xy) on the unit disk, zero outside", false, false,
           SupportedFunction([](double x, double y) {
             if (x * x + y * y > 1.0) return cplx{};
             return cplx(std::exp(-x * y), std::sin(x * y));
           }));
    c.M = 5, c.N = 6, c.K = 9, c.k_list = {9, 18, 36}, c.eval_grid = 53;
    cases.push_back(c);
  }
  {
    Case c = make_case("rectangle", "indicator of [-0.25,0.25] x [-0.5,0.5]", false, true,
           SupportedFunction([](double x, double y) { return cplx(std::abs(x) <= 0.25 && std::abs(y) <= 0.5 ? 1.0 : 0.0); }));
    c.M = 10, c.N = 10, c.K = 15, c.k_list = {15, 30}, c.eval_grid = 65;
    cases.push_back(c);
  }
  {
    const std::vector<Point> v{{0, 0}, {0, 3}, {-3, 3}, {-3, 0}, {-2, 0}, {-2, -1}, {-1, 1}, {-1, -2}, {2, -2}, {2, 0}};
    Case c = make_case("polygon", "indicator of the ten-vertex polygon", false, true,
           SupportedFunction([v](double x, double y) { return cplx(point_in_polygon(v, {x, y}) ? 1.0 : 0.0); }, {},
                             std::sqrt(18.0)));
    c.a = 6.0, c.M = 10, c.N = 10, c.K = 15, c.k_list = {15, 30}, c.eval_grid = 81;
    cases.push_back(c);
  }
  {
    Case c = make_case("astroid", "indicator of |x|^(2/3) + |y|^(2/3) <= 1", false, true,
           SupportedFunction(
               [](double x, double y) {
                 return cplx(std::cbrt(x * x) + std::cbrt(y * y) <= 1.0 ? 1.0 : 0.0);
               },
               {}, 1.0));
    c.a = 2.0, c.M = 15, c.N = 15, c.K = 22, c.k_list = {22, 44}, c.eval_grid = 95;
    cases.push_back(c);
  }
  {
    const Bump b{0.8, 3};
    Case c = make_case("bump", "(1 - r^2/0.64)^3 (1 + x/2 + y/4 + 3xy/4), C^2 on the disk of radius 0.8", false, false,
           SupportedFunction(b, {}, 0.8));
    c.gradient = [b](double x, double y) { return b.gradient(x, y); };
    c.M = 3, c.N = 3, c.K = 8, c.k_list = {8, 16, 32}, c.eval_grid = 101;
    cases.push_back(c);
  }
  {
    Case c = make_case("disk-pair", "chi_B1 * chi_B1", true, true, SupportedFunction::disk_indicator(1.0));
    c.g = SupportedFunction::disk_indicator(1.0);
    c.a = 3.0, c.M = 10, c.N = 10, c.K = 15, c.k_list = {15, 30}, c.eval_grid = 82;
    cases.push_back(c);
  }
  {
    Case c = make_case("disk-pair-12", "chi_B1 * chi_B2", true, true, SupportedFunction::disk_indicator(1.0));
    c.g = SupportedFunction::disk_indicator(2.0);
    c.a = 6.0, c.M = 10, c.N = 10, c.K = 15, c.k_list = {15, 30}, c.eval_grid = 82;
    cases.push_back(c);
  }
  {
    const Point gc{0.05, -0.03};
    Case c = make_case("bump-pair", "C^1 bumps (1 - r^2/0.16)^2 and (1 - |x - c|^2/0.1225)^2, c = (0.05,-0.03)", true, false,
           SupportedFunction(radial_bump({}, 0.4), {}, 0.4));
    c.g = SupportedFunction(radial_bump(gc, 0.35), gc, 0.35);
    c.M = 2, c.N = 2, c.K = 8, c.k_list = {8, 16, 32}, c.eval_grid = 61;
    cases.push_back(c);
  }
  return cases;
}

}  // namespace

const std::vector<Case>& case_registry() {
  static const std::vector<Case> cases = build_registry();
  return cases;
}

std::vector<std::string> case_names() {
  std::vector<std::string> names;
  for (const auto& c : case_registry()) names.push_back(c.name);
  return names;
}

const Case& find_case(const std::string& name) {
  for (const auto& c : case_registry())
    if (c.name == name) return c;
  std::string known;
  for (const auto& n : case_names()) known += (known.empty() ? "" : ", ") + n;
  throw InvalidArgument("unknown case '" + name + "' (known: " + known + ")");
}

Function2D noise_function(std::uint64_t seed) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  return [seed, mix](double x, double y) {
    if (x * x + y * y > 1.0) return cplx{};
    const std::uint64_t h = mix(mix(seed ^ std::bit_cast<std::uint64_t>(x)) ^ std::bit_cast<std::uint64_t>(y));
    const std::uint64_t h2 = mix(h);
    const double u = double(h >> 11) * 0x1.0p-53;
    const double v = double(h2 >> 11) * 0x1.0p-53;
    return cplx(2.0 * u - 1.0, 2.0 * v - 1.0);
  };
}

bool point_in_polygon(const std::vector<Point>& v, Point p) {
  const std::size_t n = v.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = v[i], b = v[j];
    // on the edge
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (cross == 0.0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
        p.y <= std::max(a.y, b.y))
      return true;
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) inside = !inside;
  }
  return inside;
}

double gradient_sup_norm(const Gradient2D& gradient, double radius, int side) {
  double best = 0.0;
  for (int i = 0; i < side; ++i) {
    const double x = -radius + 2.0 * radius * i / (side - 1);
    for (int j = 0; j < side; ++j) {
      const double y = -radius + 2.0 * radius * j / (side - 1);
      if (x * x + y * y > radius * radius) continue;
      const auto g = gradient(x, y);
      best = std::max(best, std::hypot(g[0], g[1]));
    }
  }
  return best;
}

}  // namespace ffbt
