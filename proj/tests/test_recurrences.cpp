#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bssk/edge_stats.hpp"
#include "bssk/errors.hpp"
#include "bssk/loe.hpp"
#include "bssk/model.hpp"
#include "bssk/recurrences.hpp"

using namespace bssk;

namespace {
TridiagonalSample draw(int n, int m, std::uint64_t k) {
  Stream st(31, k);
  return sample_loe(n, m, st);
}
}  // namespace

TEST_CASE("root identities and monotonicity") {
  const auto t = draw(500, 1000, 0);
  const auto s = build_recurrence(t, 2.0);
  const int n = 500, m = 1000;
  for (int i = 1; i <= n; ++i) {
    const double c = s.gamma * m - (m - n + 2.0 * i - 1);
    CHECK(s.rho_plus[i] * s.rho_minus[i] == doctest::Approx((m - n + i - 1.0) * (i - 1.0)).epsilon(1e-10));
    CHECK(s.rho_plus[i] + s.rho_minus[i] == doctest::Approx(-c).epsilon(1e-10));
    if (i > 1) {
      CHECK(std::abs(s.rho_plus[i]) < std::abs(s.rho_plus[i - 1]));
      CHECK(std::abs(s.rho_minus[i]) > std::abs(s.rho_minus[i - 1]));
    }
  }
  CHECK(s.rho_minus[1] == 0.0);
  CHECK(s.rho_plus[1] == -(s.gamma * m - (m - n + 1)));
}

TEST_CASE("gap |rho_i^+| - |rho_i^-| in closed form") {
  // sqrt(disc) = 2 sqrt(k(m + n + 2 sqrt(mn) - 1) - sqrt(mn) + 1/4), k = n - i + 1
  for (int n : {50, 400}) {
    for (int m : {n, 3 * n}) {
      const double rt = std::sqrt(double(m) * n), dp = d_plus(double(n) / m);
      for (int i : {2, n / 2, n}) {
        double rp, rm;
        characteristic_roots(n, m, dp, i, rp, rm);
        const double k = n - i + 1;
        CHECK(std::abs(rp) - std::abs(rm) ==
              doctest::Approx(2 * std::sqrt(k * (m + n + 2 * rt - 1) - rt + 0.25)).epsilon(1e-10));
      }
    }
  }
  // m = n, i = n: sqrt(12 n - 3); the printed +sqrt(mn)+1 variant gives 2 sqrt(5n)
  const int n = 100;
  double rp, rm;
  characteristic_roots(n, n, 4.0, n, rp, rm);
  CHECK(std::abs(rp) - std::abs(rm) == doctest::Approx(std::sqrt(12.0 * n - 3)).epsilon(1e-12));
  CHECK(std::abs(std::abs(rp) - std::abs(rm) - 2 * std::sqrt(5.0 * n)) > 1.0);
}

TEST_CASE("negative discriminant is reported") {
  const auto t = draw(200, 200, 1);
  CHECK_THROWS_AS(build_recurrence(t, -50.0), NegativeDiscriminant);
}

TEST_CASE("omega, suffix weights and the weighted-sum identity") {
  for (int k = 0; k < 5; ++k) {
    const auto t = draw(300, 600, 10 + k);
    const auto s = build_recurrence(t, 3.0);
    const int n = s.n;
    for (int i = 2; i <= n; ++i) {
      CHECK(s.omega[i] == s.tau[i - 1] * s.delta[i]);
      CHECK(s.suffix_weights[i] == 1 + s.omega[i] * s.suffix_weights[i + 1]);
      CHECK(s.omega[i] == doctest::Approx(std::abs(s.rho_minus[i] / s.rho_plus[i - 1])).epsilon(1e-12));
    }
    CHECK(s.suffix_weights[n + 1] == 1.0);
    double wx = 0, sa3 = 0;
    for (int i = 3; i <= n; ++i) wx += s.suffix_weights[i + 1] * s.X[i], sa3 += s.alpha[i];
    const double lhs = s.sum_L();
    CHECK(lhs == doctest::Approx(wx + s.alpha_remainder()).epsilon(1e-10));
    // the sum from i = 3 misses alpha_2
    CHECK((wx + sa3 - s.suffix_weights[3] * s.alpha[2]) + s.alpha[2] ==
          doctest::Approx(lhs).epsilon(1e-10));
    const auto z0 = truncated_Z(s, 0);
    CHECK(z0.tail == 0.0);
    CHECK(z0.Z + z0.remainder == doctest::Approx(lhs).epsilon(1e-10));
    const auto zq = truncated_Z(s, n / 4);
    CHECK(zq.Z + zq.tail == doctest::Approx(z0.Z).epsilon(1e-10));
  }
}

TEST_CASE("truncation range guard") {
  const auto s = build_recurrence(draw(50, 100, 2), 1.0);
  CHECK_THROWS_AS(truncated_Z(s, 50), InvalidParameter);
  CHECK_THROWS_AS(truncated_Z(s, 48), InvalidParameter);
  CHECK_NOTHROW(truncated_Z(s, 47));
}

TEST_CASE("1 - omega_i scales like sqrt((n-i+1)/n)") {
  const auto s = build_recurrence(draw(2000, 4000, 3), 0.0);
  double lo = 1e9, hi = 0;
  for (int i = 2; i <= s.n; ++i) {
    const double r = (1 - s.omega[i]) / std::sqrt((s.n - i + 1.0) / s.n);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  MESSAGE("fitted C1 = ", lo, ", C2 = ", hi);
  CHECK(lo > 0.1);
  CHECK(hi < 10);
}

TEST_CASE("eigenvector from the ratio recurrence") {
  const auto t = draw(500, 1000, 4);
  const auto top = eigenvector_top(t);
  REQUIRE(top.reliable);
  const auto r = eigvec_recurrence(t, top.mu1);
  CHECK_FALSE(r.flagged);
  for (double x : r.log_ratio) CHECK(std::isfinite(x));
  const auto v = reconstruct_eigenvector(r);
  double worst = 0;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (std::abs(top.v[j]) > 1e-12) worst = std::max(worst, std::abs(v[j] / top.v[j] - 1));
  CHECK(worst < 1e-6);
  // decay toward the top-left corner
  const auto dc = decay_curve(r);
  CHECK(*std::max_element(dc.begin(), dc.begin() + 250) < -8);
}

TEST_CASE("F_j small away from the corner") {
  // max_{j <= n/2} |F_j| tracks n^{-1/2} sqrt(log n), so n^{1/3} max|F_j| falls with n
  auto median_max = [](int n, int N) {
    std::vector<double> mx;
    for (int k = 0; k < N; ++k) {
      const auto t = draw(n, 2 * n, 100 + k);
      const auto r = eigvec_recurrence(t, t.matrix().mu1());
      double x = 0;
      for (int j = 1; j <= n / 2; ++j) x = std::max(x, std::abs(r.F[j - 1]));
      mx.push_back(x);
    }
    std::sort(mx.begin(), mx.end());
    return std::make_pair(mx[N / 2], mx[(9 * N) / 10]);
  };
  const auto [m500, q500] = median_max(500, 60);
  const auto [m2000, q2000] = median_max(2000, 60);
  const double env = std::sqrt(std::log(2000.0) / 2000.0);
  MESSAGE("median max|F_j|: n=500 ", m500, ", n=2000 ", m2000, "; 0.1 n^{-1/3} = ", 0.1 / std::cbrt(2000.0));
  CHECK(q2000 < 1.5 * env);
  CHECK(m2000 * std::cbrt(2000.0) < m500 * std::cbrt(500.0));
}

TEST_CASE("eigenvector mass leaves the top-left block") {
  int ok = 0;
  for (int k = 0; k < 40; ++k) {
    const auto t = draw(2000, 4000, 300 + k);
    const auto d = decay_curve(eigvec_recurrence(t, t.matrix().mu1()));
    if (*std::max_element(d.begin(), d.begin() + 1000) < -8) ++ok;
  }
  CHECK(ok >= 38);
}

TEST_CASE("minor top eigenvalue") {
  const auto t = draw(400, 800, 5);
  const double mu1 = t.matrix().mu1();
  CHECK(minor_top_eigenvalue(t, 400).mu_tilde1 == mu1);
  for (int p : {10, 50, 100, 200, 399}) CHECK(minor_top_eigenvalue(t, p).mu_tilde1 <= mu1 + 1e-14);
  CHECK(std::abs(minor_top_eigenvalue(t, 200).mu_tilde1 - mu1) < 1e-8);
  CHECK(minor_top_eigenvalue(t, 400).Y_n == doctest::Approx(T2n(mu1, 400, 0.5)).epsilon(1e-14));
}

TEST_CASE("a_j b_j concentration") {
  const auto t = draw(2000, 4000, 6);
  const auto r = ab_concentration(t);
  CHECK(r.cutoff == 1000);
  CHECK(r.lemma_holds);
  for (int j = 1; j < 2000; ++j) CHECK(t.a[j - 1] * t.b[j - 1] > 0);
  // E[a_j^2 b_j^2] = j(m - n + j)
  const int j = 37, n = 60, m = 120, N = 10000;
  double acc = 0;
  for (int k = 0; k < N; ++k) {
    const auto s = draw(n, m, 1000 + k);
    acc += std::pow(s.a[j - 1] * s.b[j - 1], 2);
  }
  CHECK(acc / N == doctest::Approx(double(j) * (m - n + j)).epsilon(0.02));
}

TEST_CASE("independence experiment bookkeeping") {
  const auto rep = independence_experiment(200, 400, 1.0, 50, 40, 7, 2, 200);
  CHECK(rep.rows.size() == 40);
  CHECK(rep.split.ci_lo <= rep.split.r);
  CHECK(rep.split.r <= rep.split.ci_hi);
  CHECK_THROWS_AS(independence_experiment(200, 400, 1.0, 200, 40, 7, 2), InvalidParameter);
  // deterministic under the worker count
  const auto rep1 = independence_experiment(200, 400, 1.0, 50, 40, 7, 1, 200);
  CHECK(rep1.rows[17].Z_stat == rep.rows[17].Z_stat);
}
