#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ffbt/oracle.hpp"

namespace ffbt {

using Gradient2D = std::function<std::array<double, 2>(double, double)>;

// Built-in generators for the CLI studies. Functions are given in physical
// coordinates; a is the half width of the square [-a, a]^2 they are analyzed
// on, so f(a x) is supported in the unit disk.
struct Case {
  std::string name;
  std::string description;
  bool convolution = false;
  bool indicator = false;  // discontinuous: pass/fail uses the L2 grid norm
  SupportedFunction f;
  std::optional<SupportedFunction> g;
  Gradient2D gradient;  // analytic gradient of f when known
  double a = 1.0;
  int M = 2;
  int N = 2;
  int K = 3;
  std::vector<int> k_list;
  int eval_grid = 41;
};

const std::vector<Case>& case_registry();

/// Throws InvalidArgument listing the known names.
const Case& find_case(const std::string& name);

std::vector<std::string> case_names();

/// Pseudo-random complex field on the unit disk: a hash of the coordinate
/// bits and the seed mapped to [-1, 1] + i[-1, 1]; zero outside.
Function2D noise_function(std::uint64_t seed);

/// Closed polygon indicator (even-odd rule, boundary counted inside).
bool point_in_polygon(const std::vector<Point>& vertices, Point p);

/// max |grad f| over a side x side grid of the disk of the given radius.
double gradient_sup_norm(const Gradient2D& gradient, double radius, int side = 801);

}  // namespace ffbt
