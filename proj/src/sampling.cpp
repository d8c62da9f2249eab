#include "ffbt/sampling.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <string>

#include "ffbt/error.hpp"
#include "ffbt/finite_fourier.hpp"
#include "ffbt/parallel.hpp"

namespace ffbt {

Grid::Grid(int side) : side_(side), delta_(0.0) {
  if (side < 1) throw InvalidArgument("grid side must be >= 1, got " + std::to_string(side));
  delta_ = 2.0 / side;
  nodes_.resize(side);
  for (int i = 0; i < side; ++i) nodes_[i] = node(i);
}

Grid make_grid(int side) { return Grid(side); }

std::vector<std::pair<int, int>> disk_mask(const Grid& grid) {
  std::vector<std::pair<int, int>> mask;
  const auto& x = grid.nodes();
  for (int i = 0; i < grid.side(); ++i)
    for (int j = 0; j < grid.side(); ++j)
      if (x[i] * x[i] + x[j] * x[j] <= 1.0) mask.emplace_back(i, j);
  return mask;
}

struct SampledField::DftCache {
  std::once_flag once;
  ComplexMatrix dft;
};

SampledField::SampledField(Grid grid, ComplexMatrix values, double half_width)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      half_width_(half_width),
      cache_(std::make_shared<DftCache>()) {
  const auto side = std::size_t(grid_.side());
  if (values_.rows() != side || values_.cols() != side)
    throw InvalidArgument("field values must be " + std::to_string(side) + "x" + std::to_string(side));
  if (!(half_width_ > 0.0) || !std::isfinite(half_width_))
    throw InvalidArgument("field half width must be positive");
  for (const auto& v : values_.values())
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidArgument("field values must be finite");
}

bool SampledField::is_real() const {
  for (const auto& v : values_.values())
    if (v.imag() != 0.0) return false;
  return true;
}

const ComplexMatrix& SampledField::dft() const {
  std::call_once(cache_->once, [this] { cache_->dft = dft2(values_); });
  return cache_->dft;
}

namespace {

SampledField sample_impl(const Function2D& f, double a, int side) {
  Grid grid(side);
  ComplexMatrix values(side, side);
  const auto& x = grid.nodes();
  parallel_for(std::size_t(side), [&](std::size_t i) {
    for (int j = 0; j < side; ++j) {
      const cplx v = f(a * x[i], a * x[j]);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "function returned a non-finite value at node (" << i << "," << j << ") = ("
            << a * x[i] << "," << a * x[j] << ")";
        throw SamplingError(msg.str());
      }
      values(i, j) = v;
    }
  });
  return SampledField(std::move(grid), std::move(values), a);
}

}  // namespace

SampledField sample(const Function2D& f, int side) { return sample_impl(f, 1.0, side); }

SampledField sample_scaled(const Function2D& f, double a, int side) {
  if (!(a > 0.0)) throw InvalidArgument("scale a must be positive");
  return sample_impl(f, a, side);
}

}  // namespace ffbt
