#include <doctest.h>

#include <cmath>

#include "bssk/critical_point.hpp"
#include "bssk/edge_stats.hpp"
#include "bssk/errors.hpp"
#include "bssk/loe.hpp"
#include "bssk/model.hpp"
#include "bssk/stats.hpp"
#include "bssk/tw_fredholm.hpp"

using namespace bssk;

TEST_CASE("TW1 table shape") {
  const auto& tw = TWReference::builtin();
  CHECK(tw.grid().front() == -10.0);
  CHECK(tw.grid().back() == 6.0);
  CHECK(tw.cdf(-10.0) < 1e-6);
  // exact tail: 1 - F_1(6) is about 1.94e-6
  CHECK(1.0 - tw.cdf(6.0) == doctest::Approx(1.94e-6).epsilon(0.01));
  for (std::size_t i = 1; i < tw.values().size(); ++i) CHECK(tw.values()[i] >= tw.values()[i - 1]);
}

TEST_CASE("TW1 moments match published values") {
  // Bornemann (2010): mean -1.2065335745820, variance 1.6077810345810
  const auto& tw = TWReference::builtin();
  CHECK(tw.mean() == doctest::Approx(-1.2065335745820).epsilon(1e-4));
  CHECK(tw.sd() * tw.sd() == doctest::Approx(1.6077810345810).epsilon(1e-3));
}

TEST_CASE("table reproduces the determinant between grid points") {
  const auto& tw = TWReference::builtin();
  for (double s : {-3.713, -1.2345, 0.005, 1.777, 3.3}) CHECK(std::abs(tw.cdf(s) - tw1_cdf_fredholm(s)) < 1e-7);
  CHECK(tw1_cdf_fredholm(0.0) == doctest::Approx(0.8319080662).epsilon(1e-9));
}

TEST_CASE("GOE Monte Carlo agrees with the table") {
  // Hermite beta = 1 tridiagonal model; centering bias is O(n^{-2/3})
  const int n = 600, draws = 3000;
  std::vector<double> xs;
  for (int k = 0; k < draws; ++k) {
    Stream st(2024, k);
    std::vector<double> d(n), e(n - 1);
    for (int i = 0; i < n; ++i) d[i] = st.normal();
    for (int i = 0; i + 1 < n; ++i) e[i] = st.chi(n - 1 - i) / std::sqrt(2.0);
    SymTridiag H(d, e);
    xs.push_back(std::sqrt(2.0) * std::pow(n, 1.0 / 6.0) * (H.mu1() - std::sqrt(2.0 * n)));
  }
  const auto& tw = TWReference::builtin();
  CHECK(ks_statistic(xs, [&](double x) { return tw.cdf(x); }) < 0.05);
}

TEST_CASE("quantile inverts cdf") {
  const auto& tw = TWReference::builtin();
  for (double u : {0.01, 0.3, 0.5, 0.9, 0.999}) CHECK(tw.cdf(tw.quantile(u)) == doctest::Approx(u).epsilon(1e-9));
}

TEST_CASE("limit law") {
  const auto& tw = TWReference::builtin();
  LimitLaw z(tw, 0.0);
  CHECK(z.cdf(0.3) == doctest::Approx(normal_cdf(0.3)).epsilon(1e-15));
  LimitLaw law(tw, 1.5);
  CHECK(law.mean() == doctest::Approx(1.5 * tw.mean()).epsilon(1e-12));
  std::vector<double> xs;
  Stream st(77, 0);
  for (int i = 0; i < 20000; ++i) xs.push_back(law.sample(st));
  CHECK(ks_statistic(xs, [&](double x) { return law.cdf(x); }) < 0.015);
  CHECK(mean(xs) == doctest::Approx(law.mean()).epsilon(0.03));
  CHECK(variance(xs) == doctest::Approx(law.variance()).epsilon(0.05));
  CHECK(limit_coefficient(-1.0, 0.5, CoeffVariant::theorem) == 0.0);
}

TEST_CASE("T statistics on synthetic spectra") {
  const int n = 50;
  const double lam = 0.5, dp = d_plus(lam);
  ListSpectrum below(std::vector<double>(n, dp - 1.0));
  const double ln = std::log(double(n));
  CHECK(T1n(below, n, lam) == doctest::Approx((C_lambda(lam) * n - ln / 6) / std::sqrt(2 * ln / 3)).epsilon(1e-13));
  CHECK(T2n(dp, n, lam) == 0.0);
  ListSpectrum edge(std::vector<double>(n, dp));
  CHECK_THROWS_AS(T1n(edge, n, lam), DegenerateSpectrum);
  CHECK(T2n(dp + 0.01, n, lam) > 0.0);
  CHECK(T2n(dp - 0.01, n, lam) < 0.0);
}

TEST_CASE("CLT statistic at zero shift is -T1n") {
  Stream st(3, 1);
  const auto t = sample_loe(500, 500, st);
  const auto T = t.matrix();
  CHECK(clt_statistic(T, 500, 1.0, 0.0) == doctest::Approx(-T1n(T, 500, 1.0)).epsilon(1e-14));
}

TEST_CASE("T0n needs gamma_tilde above mu_1") {
  const double lam = 1.0, beta = 1.0;
  ListSpectrum s({gamma_tilde(beta, lam) + 0.1, 1.0});
  CHECK_THROWS_AS(T0n(s, 2, lam, beta), DegenerateSpectrum);
  const auto p = ModelParams::fixed_beta(2, 2, beta);
  const auto e = compute_T_statistics(s, p);
  CHECK_FALSE(e.T0n_defined);
  CHECK(std::isnan(e.T0n));
}
