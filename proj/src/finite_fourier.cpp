#include "ffbt/finite_fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>

#include "ffbt/error.hpp"

namespace ffbt {

namespace {
constexpr double kPi = std::numbers::pi;

// FFTW's planner is not thread safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

int FrequencyIndex::sup_norm() const { return std::max(std::abs(k1), std::abs(k2)); }

double FrequencyIndex::norm() const { return std::hypot(double(k1), double(k2)); }

ComplexMatrix dft2(const ComplexMatrix& a) {
  if (!a.square()) throw InvalidArgument("dft2 requires a square matrix");
  const int side = int(a.rows());
  ComplexMatrix in = a;
  ComplexMatrix out(a.rows(), a.cols());
  if (side == 0) return out;
  auto* in_ptr = reinterpret_cast<fftw_complex*>(in.data());
  auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(side, side, in_ptr, out_ptr, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

int fold_index(int kappa, int side) {
  const int r = kappa % side;
  return r < 0 ? r + side : r;
}

cplx finite_fourier_disk(const SampledField& field, FrequencyIndex k) {
  const int side = field.side();
  const double d = field.grid().delta();
  const double sign = ((k.k1 + k.k2) % 2 == 0) ? 1.0 : -1.0;
  return d * d * sign * field.dft()(fold_index(k.k1, side), fold_index(k.k2, side));
}

cplx finite_fourier_coeff_1d(const std::function<cplx(double)>& u, int k, int side) {
  const Grid grid(side);
  cplx sum{};
  for (double x : grid.nodes()) sum += u(x) * std::polar(1.0, -kPi * k * x);
  return sum / double(side);
}

cplx finite_fourier_coeff_2d(const Function2D& u, FrequencyIndex k, int side) {
  const Grid grid(side);
  cplx sum{};
  for (double x : grid.nodes())
    for (double y : grid.nodes()) sum += u(x, y) * std::polar(1.0, -kPi * (k.k1 * x + k.k2 * y));
  return sum / (double(side) * double(side));
}

}  // namespace ffbt
