#include <doctest.h>

#include <cmath>
#include <vector>

#include "bssk/loe.hpp"
#include "bssk/rng.hpp"

using namespace bssk;

TEST_CASE("philox4x32-10 known-answer vectors") {
  auto r = philox4x32({0, 0, 0, 0}, {0, 0});
  CHECK(r[0] == 0x6627e8d5u);
  CHECK(r[1] == 0xe169c58du);
  CHECK(r[2] == 0xbc57ac4cu);
  CHECK(r[3] == 0x9b00dbd8u);
  r = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  CHECK(r[0] == 0x408f276du);
  CHECK(r[1] == 0x41c83b0eu);
  CHECK(r[2] == 0xa20bc7c6u);
  CHECK(r[3] == 0x6d5451fdu);
  r = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  CHECK(r[0] == 0xd16cfe09u);
  CHECK(r[1] == 0x94fdccebu);
  CHECK(r[2] == 0x5001e420u);
  CHECK(r[3] == 0x24126ea1u);
}

TEST_CASE("streams are deterministic and distinct") {
  Stream a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    CHECK(x != d.next_u64());
  }
  Stream e(42, 3, 1);
  Stream f(42, 3);
  CHECK(e.next_u64() != f.next_u64());
}

TEST_CASE("uniform lies in the open unit interval with mean 1/2") {
  Stream s(1, 0);
  double sum = 0;
  const int N = 200000;
  for (int i = 0; i < N; ++i) {
    const double u = s.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / N - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / N) * 1.5);
}

namespace {
struct Moments {
  double mean, var;
};
Moments chi2_moments(double dof, int N, std::uint64_t seed) {
  Stream s(seed, 0);
  double m1 = 0, m2 = 0;
  for (int i = 0; i < N; ++i) {
    const double x = sample_chi(dof, s);
    const double y = x * x;
    m1 += y;
    m2 += y * y;
  }
  m1 /= N;
  return {m1, m2 / N - m1 * m1};
}
}  // namespace

TEST_CASE("chi with two degrees of freedom squares to an exponential of mean 2") {
  const auto mo = chi2_moments(2.0, 100000, 5);
  CHECK(mo.mean > 1.96);
  CHECK(mo.mean < 2.04);
}

TEST_CASE("chi-square moments match dof and 2 dof") {
  const int N = 100000;
  for (double k : {0.3, 1.0, 1.5, 3.0, 17.0, 400.0}) {
    const auto mo = chi2_moments(k, N, 11);
    const double se_mean = std::sqrt(2 * k / N);
    // var of the sample variance of chi2(k): (E y^4 - var^2)/N with central moments of chi2
    const double mu4 = 12 * k * (k + 4);
    const double se_var = std::sqrt((mu4 - 4 * k * k) / N);
    CHECK(std::abs(mo.mean - k) < 3 * se_mean);
    CHECK(std::abs(mo.var - 2 * k) < 3 * se_var);
  }
}

TEST_CASE("normal variates have unit variance") {
  Stream s(9, 1);
  double m1 = 0, m2 = 0;
  const int N = 200000;
  for (int i = 0; i < N; ++i) {
    const double z = s.normal();
    m1 += z;
    m2 += z * z;
  }
  CHECK(std::abs(m1 / N) < 3 / std::sqrt(N));
  CHECK(std::abs(m2 / N - 1) < 3 * std::sqrt(2.0 / N));
}
