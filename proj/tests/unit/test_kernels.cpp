#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "paremio/kernels.hpp"

using namespace paremio;

TEST_CASE("ascii_fold semantics") {
  auto fold = [](const std::string& in) {
    std::string out(in.size(), 'x');
    kernels::ascii_fold_scalar(
        reinterpret_cast<const unsigned char*>(in.data()), in.size(),
        reinterpret_cast<unsigned char*>(out.data()));
    return out;
  };
  CHECK(fold("AbZ") == "abz");
  CHECK(fold("a1z9") == "a1z9");
  CHECK(fold("a b\tc\nd") == "a b c d");
  CHECK(fold("a-b'c!d") == std::string("a\0b\0c\0d", 7));
  CHECK(fold("") == "");

  unsigned char high[2] = {0xC3, 0xA9}; // e-acute, passes through
  unsigned char out[2];
  CHECK(kernels::ascii_fold_scalar(high, 2, out));
  CHECK(out[0] == 0xC3);
  CHECK(out[1] == 0xA9);

  unsigned char low[3] = {'A', ' ', '.'};
  CHECK_FALSE(kernels::ascii_fold_scalar(low, 3, out));
}

TEST_CASE("ratio_or_nan semantics") {
  const double num[4] = {5, 0, 3, 7};
  const double den[4] = {100, 100, 0, -2};
  double out[4];
  kernels::ratio_or_nan_scalar(num, den, out, 4);
  CHECK(out[0] == 0.05);
  CHECK(out[1] == 0.0);
  CHECK(std::isnan(out[2]));
  CHECK(std::isnan(out[3]));
}

TEST_CASE("nan_mask_split semantics") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double x[3] = {2.5, nan, -1.0};
  double vals[3], counts[3];
  kernels::nan_mask_split_scalar(x, 3, vals, counts);
  CHECK(vals[0] == 2.5);
  CHECK(vals[1] == 0.0);
  CHECK(vals[2] == -1.0);
  CHECK(counts[0] == 1.0);
  CHECK(counts[1] == 0.0);
  CHECK(counts[2] == 1.0);
}

TEST_CASE("backend dispatch is resolved") {
  std::string name = kernels::active_backend();
  CHECK((name == "avx2" || name == "scalar"));
}

#if defined(PAREMIO_HAVE_AVX2)

TEST_CASE("avx2 ascii_fold matches scalar bit for bit") {
  if (!__builtin_cpu_supports("avx2")) return;
  std::mt19937 rng(20240521);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int len = 0; len <= 200; ++len) {
    std::vector<unsigned char> in(static_cast<std::size_t>(len), 0);
    for (auto& b : in) b = static_cast<unsigned char>(byte(rng));
    std::vector<unsigned char> a(std::size_t(len) + 1, 0xEE),
        b(std::size_t(len) + 1, 0xEE);
    bool ha = kernels::ascii_fold_scalar(in.data(), in.size(), a.data());
    bool hb = kernels::ascii_fold_avx2(in.data(), in.size(), b.data());
    REQUIRE(ha == hb);
    REQUIRE(std::memcmp(a.data(), b.data(), a.size()) == 0);
  }
}

TEST_CASE("avx2 ratio and mask kernels match scalar bit for bit") {
  if (!__builtin_cpu_supports("avx2")) return;
  std::mt19937 rng(987123);
  std::uniform_real_distribution<double> val(-10.0, 10.0);
  std::uniform_int_distribution<int> pick(0, 9);
  for (int len = 1; len <= 70; ++len) {
    std::size_t n = std::size_t(len);
    std::vector<double> num(n), den(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
      num[i] = val(rng);
      den[i] = pick(rng) == 0 ? 0.0 : std::abs(val(rng));
      x[i] = pick(rng) == 0 ? std::numeric_limits<double>::quiet_NaN()
                            : val(rng);
    }
    std::vector<double> r1(n), r2(n);
    kernels::ratio_or_nan_scalar(num.data(), den.data(), r1.data(), n);
    kernels::ratio_or_nan_avx2(num.data(), den.data(), r2.data(), n);
    REQUIRE(std::memcmp(r1.data(), r2.data(), n * sizeof(double)) == 0);

    std::vector<double> v1(n), c1(n), v2(n), c2(n);
    kernels::nan_mask_split_scalar(x.data(), n, v1.data(), c1.data());
    kernels::nan_mask_split_avx2(x.data(), n, v2.data(), c2.data());
    REQUIRE(std::memcmp(v1.data(), v2.data(), n * sizeof(double)) == 0);
    REQUIRE(std::memcmp(c1.data(), c2.data(), n * sizeof(double)) == 0);
  }
}

#endif // PAREMIO_HAVE_AVX2
