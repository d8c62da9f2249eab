#include <gtest/gtest.h>

#include <bit>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <limits>
#include <random>

#include "ffbt/container.hpp"
#include "ffbt/error.hpp"
#include "support.hpp"

using namespace ffbt;

namespace {

bool bit_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ffbt_container_" + name);
}

}  // namespace

TEST(FormatReal, RoundTripsEdgeValues) {
  for (double v : {0.0, -0.0, 1.0 / 3.0, 1e-310, std::numeric_limits<double>::min(),
                   std::numeric_limits<double>::max(), -std::numeric_limits<double>::denorm_min(), 6.02214076e23}) {
    const double back = std::strtod(format_real(v).c_str(), nullptr);
    EXPECT_EQ(std::bit_cast<std::uint64_t>(back), std::bit_cast<std::uint64_t>(v)) << format_real(v);
  }
}

TEST(FieldFile, BitExactRoundTrip) {
  std::mt19937_64 rng(9);
  auto m = testing_support::random_matrix(7, rng);
  m(0, 0) = cplx(-0.0, 1e-320);
  const SampledField f(Grid(7), m, 2.5);
  const auto path = scratch("field.json");
  write_field(path, f);
  const auto back = read_field(path);
  EXPECT_EQ(back.side(), 7);
  EXPECT_EQ(back.half_width(), 2.5);
  EXPECT_TRUE(bit_equal(back.values(), f.values()));
  std::filesystem::remove(path);
}

TEST(KernelFile, BitExactRoundTrip) {
  const auto k = build_kernel({-2, 3}, 4);
  const auto path = scratch("kernel.json");
  write_kernel_matrix(path, KernelKind::cross, k.idx, k.K, k.q_cross);
  const auto back = read_kernel_matrix(path);
  EXPECT_EQ(back.kind, KernelKind::cross);
  EXPECT_EQ(back.idx.m, -2);
  EXPECT_EQ(back.idx.n, 3);
  EXPECT_EQ(back.K, 4);
  EXPECT_TRUE(bit_equal(back.values, k.q_cross));
  std::filesystem::remove(path);
  EXPECT_EQ(kernel_file_name(KernelKind::plain, {1, 2}, 5), "Q_m1_n2_K5.json");
  EXPECT_EQ(kernel_file_name(KernelKind::cross, {-1, 2}, 5), "Qx_m-1_n2_K5.json");
}

TEST(SpectrumFile, BitExactRoundTrip) {
  Spectrum s(2, 3, 9, 1.5);
  std::mt19937_64 rng(10);
  std::normal_distribution<double> d;
  for (auto& c : s.coeffs) c = cplx(d(rng), d(rng));
  const auto back = spectrum_from_text(spectrum_to_text(s));
  EXPECT_EQ(back.M, 2);
  EXPECT_EQ(back.N, 3);
  EXPECT_EQ(back.K, 9);
  EXPECT_EQ(back.a, 1.5);
  ASSERT_EQ(back.size(), s.size());
  EXPECT_EQ(std::memcmp(back.coeffs.data(), s.coeffs.data(), s.size() * sizeof(cplx)), 0);
  EXPECT_EQ(spectrum_to_text(back), spectrum_to_text(s));
}

TEST(Containers, RejectMalformedInput) {
  EXPECT_THROW(field_from_text("not json"), FormatError);
  EXPECT_THROW(field_from_text("{\"header\":{\"L\":2,\"a\":1,\"layout\":\"row-major\"},\"re\":[1,2,3],\"im\":[0,0,0]}"),
               FormatError);
  EXPECT_THROW(field_from_text("{\"header\":{\"L\":1,\"a\":1,\"layout\":\"column-major\"},\"re\":[1],\"im\":[0]}"),
               FormatError);
  EXPECT_THROW(field_from_text("{\"re\":[1],\"im\":[0]}"), FormatError);
  EXPECT_THROW(spectrum_from_text("{\"header\":{\"M\":0,\"N\":1,\"K\":3,\"a\":1},\"records\":[]}"), FormatError);
  EXPECT_THROW(read_field(scratch("missing.json")), FormatError);
  const auto good = field_from_text("{\"header\":{\"L\":1,\"a\":1,\"layout\":\"row-major\"},\"re\":[1],\"im\":[2]}");
  EXPECT_EQ(good(0, 0), cplx(1.0, 2.0));
}
