#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "ffbt/matrix.hpp"

namespace ffbt {

using Function2D = std::function<cplx(double, double)>;

// Uniform half-open grid on [-1,1]: x_i = -1 + i * delta, i = 0..L-1, with
// delta = 2/L. The right endpoint +1 is never a node.
class Grid {
 public:
  explicit Grid(int side);

  int side() const { return side_; }
  double delta() const { return delta_; }
  double node(int i) const { return -1.0 + i * delta_; }
  const std::vector<double>& nodes() const { return nodes_; }

  bool operator==(const Grid& other) const { return side_ == other.side_; }

 private:
  int side_;
  double delta_;
  std::vector<double> nodes_;
};

Grid make_grid(int side);

/// Index pairs (i, j), 0-based, with x_i^2 + x_j^2 <= 1 (closed disk).
std::vector<std::pair<int, int>> disk_mask(const Grid& grid);

/// L x L samples of a function on the grid of [-1,1]^2; entry (i, j) holds
/// f(x_i, x_j). Immutable; the unnormalized 2D DFT is computed on first use
/// and shared by copies.
class SampledField {
 public:
  SampledField(Grid grid, ComplexMatrix values, double half_width = 1.0);

  const Grid& grid() const { return grid_; }
  int side() const { return grid_.side(); }
  double half_width() const { return half_width_; }
  const ComplexMatrix& values() const { return values_; }
  const cplx& operator()(int i, int j) const { return values_(i, j); }

  // True when every sample has an exactly zero imaginary part.
  bool is_real() const;

  const ComplexMatrix& dft() const;

 private:
  struct DftCache;

  Grid grid_;
  ComplexMatrix values_;
  double half_width_;
  std::shared_ptr<DftCache> cache_;
};

/// values(i, j) = f(x_i, x_j). Throws SamplingError naming the node when f
/// returns a non-finite value.
SampledField sample(const Function2D& f, int side);

/// Samples f(a x, a y) on the unit grid and records a as the half width, so
/// that the field describes a function supported in the disk of radius a.
SampledField sample_scaled(const Function2D& f, double a, int side);

}  // namespace ffbt
