#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ffbt/convolution.hpp"
#include "ffbt/error.hpp"
#include "support.hpp"

using namespace ffbt;

namespace {

// Random samples restricted to the disk of radius 1/2.
SampledField half_disk_field(int side, std::mt19937_64& rng) {
  auto m = testing_support::random_matrix(side, rng);
  const Grid grid(side);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      if (std::hypot(grid.node(i), grid.node(j)) > 0.5) m(i, j) = 0.0;
  return SampledField(grid, m);
}

Function2D small_bump(double cx, double cy, double r) {
  return [=](double x, double y) {
    const double s = ((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (r * r);
    return s >= 1.0 ? cplx(0.0) : cplx((1.0 - s) * (1.0 - s), 0.0);
  };
}

}  // namespace

TEST(FfbtConv, ZeroFactor) {
  std::mt19937_64 rng(1);
  const auto f = half_disk_field(11, rng);
  const SampledField g(Grid(11), ComplexMatrix(11, 11));
  EXPECT_EQ(ffbt_conv(f, g, {1, 1}, 5), cplx(0.0));
}

TEST(FfbtConv, SymmetricInFactors) {
  std::mt19937_64 rng(2);
  const auto f = half_disk_field(13, rng), g = half_disk_field(13, rng);
  for (HarmonicIndex idx : {HarmonicIndex{0, 1}, HarmonicIndex{2, 2}, HarmonicIndex{-3, 1}})
    EXPECT_NEAR(std::abs(ffbt_conv(f, g, idx, 6) - ffbt_conv(g, f, idx, 6)), 0.0, 1e-14);
}

TEST(FfbtConv, MatchesRawDoubleSum) {
  std::mt19937_64 rng(3);
  const int K = 4;
  const auto f = half_disk_field(9, rng), g = half_disk_field(9, rng);
  for (HarmonicIndex idx : {HarmonicIndex{0, 1}, HarmonicIndex{1, 2}, HarmonicIndex{-2, 1}})
    EXPECT_LE(testing_support::rel_err(ffbt_conv(f, g, idx, K), testing_support::raw_ffbt_conv(f, g, idx, K)), 1e-10);
}

TEST(FfbtConv, BlockEqualsSingles) {
  std::mt19937_64 rng(4);
  const auto f = half_disk_field(17, rng), g = half_disk_field(17, rng);
  const auto spec = ffbt_conv_block(f, g, 2, 2, 8);
  for (int m = -2; m <= 2; ++m)
    for (int n = 1; n <= 2; ++n) EXPECT_NEAR(std::abs(spec.at(m, n) - ffbt_conv(f, g, {m, n}, 8)), 0.0, 1e-14);
}

TEST(FfbtConv, WarnsOnWideSupport) {
  std::vector<std::string> seen;
  auto prev = set_warning_handler([&](const std::string& s) { seen.push_back(s); });
  std::mt19937_64 rng(5);
  const auto wide = testing_support::random_field(9, rng);
  const auto narrow = half_disk_field(9, rng);
  ffbt_conv(wide, narrow, {0, 1}, 4);
  set_warning_handler(prev);
  EXPECT_FALSE(seen.empty());
}

TEST(IffbtConv, PathsAgree) {
  std::mt19937_64 rng(6);
  const int K = 6;
  const auto f = half_disk_field(13, rng), g = half_disk_field(13, rng);
  const auto pts = evaluation_grid(11);
  const auto a = iffbt_conv(f, g, 2, 2, K, pts, {SynthesisPath::two_stage});
  const auto b = iffbt_conv(f, g, 2, 2, K, pts, {SynthesisPath::trace});
  const auto spec = ffbt_conv_block(f, g, 2, 2, K);
  const ConvolutionKernel kx(2, 2, K);
  const auto prod = hadamard(f.dft(), g.dft());
  double scale = 0.0;
  for (const auto& v : a) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-12 * scale);
    EXPECT_NEAR(std::abs(a[i] - iffbt(spec, pts[i])), 0.0, 1e-12 * scale);
    EXPECT_NEAR(std::abs(a[i] - kx.evaluate(pts[i], prod)), 0.0, 1e-12 * scale);
  }
}

TEST(ConvScaled, UnitScaleAndJacobian) {
  const int K = 8;
  const auto f = small_bump(0.0, 0.0, 0.4), g = small_bump(0.05, -0.03, 0.35);
  const std::vector<Point> pts{{0.0, 0.0}, {0.2, -0.1}, {0.5, 0.5}};
  const auto r = conv_scaled(f, g, 1.0, 2, 2, K, pts);
  EXPECT_EQ(r.jacobian, 1.0);
  const auto direct = iffbt_conv(sample(f, 2 * K + 1), sample(g, 2 * K + 1), 2, 2, K, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(r.values[i], direct[i]);

  auto f2 = [&](double x, double y) { return f(x / 2.0, y / 2.0); };
  auto g2 = [&](double x, double y) { return g(x / 2.0, y / 2.0); };
  const std::vector<Point> wide{{0.0, 0.0}, {0.4, -0.2}};
  const auto s = conv_scaled(f2, g2, 2.0, 2, 2, K, wide);
  EXPECT_EQ(s.jacobian, 4.0);
  EXPECT_NEAR(std::abs(s.values[0] - direct[0]), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.values[1] - direct[1]), 0.0, 1e-14);
}

TEST(FftProductError, ZeroFrequencyAndRegime) {
  const SupportedFunction f(small_bump(0.0, 0.0, 0.4), {0.0, 0.0}, 0.4);
  const SupportedFunction g(small_bump(0.05, -0.03, 0.35), {0.05, -0.03}, 0.35);
  const QuadratureSpec q{64, 128, 64};
  EXPECT_LT(fft_product_error(f, g, {0, 0}, 8, q), 1e-3);
  EXPECT_THROW(fft_product_error(f, g, {9, 0}, 8, q), OutOfRegimeError);
}

TEST(SampleDirectConvolution, IndicatorPair) {
  const auto f = SupportedFunction::disk_indicator(0.25);
  const auto conv = sample_direct_convolution(f, f, 5);
  EXPECT_NEAR(conv(2, 2).real(), lens_area(0.25, 0.25, std::hypot(0.2, 0.2)), 1e-14);
  EXPECT_EQ(conv(0, 0), cplx(0.0));
}
