#include <doctest.h>

#include <cmath>
#include <numeric>

#include "bssk/errors.hpp"
#include "bssk/loe.hpp"

using namespace bssk;

namespace {
TridiagonalSample frozen_2x2() {
  TridiagonalSample t;
  t.n = 2;
  t.m = 4;
  t.a = {1.0, 1.0};
  t.b = {1.0};
  return t;
}
}  // namespace

TEST_CASE("bidiagonal degrees of freedom, n = 2, m = 4") {
  const int N = 100000;
  double s1 = 0, s2 = 0, sb = 0;
  for (int k = 0; k < N; ++k) {
    Stream st(2024, k);
    const auto t = sample_loe(2, 4, st);
    s1 += t.a[0] * t.a[0];
    s2 += t.a[1] * t.a[1];
    sb += t.b[0] * t.b[0];
  }
  CHECK(s1 / N == doctest::Approx(3.0).epsilon(0.02));
  CHECK(s2 / N == doctest::Approx(4.0).epsilon(0.02));
  CHECK(sb / N == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("sampling is reproducible per (seed, index)") {
  Stream s1(99, 7), s2(99, 7);
  const auto a = sample_loe(50, 80, s1), b = sample_loe(50, 80, s2);
  CHECK(a.a == b.a);
  CHECK(a.b == b.b);
}

TEST_CASE("n = 1 is rejected by the model parameters") {
  CHECK_THROWS_AS(ModelParams::fixed_beta(1, 3, 1.0), InvalidParameter);
}

TEST_CASE("2x2 frozen sample: quadratic-formula oracle") {
  const auto s = eigenvalues(frozen_2x2());
  REQUIRE(s.size() == 2);
  CHECK(s.mu[0] == doctest::Approx((3 + std::sqrt(5.0)) / 8).epsilon(1e-13));
  CHECK(s.mu[1] == doctest::Approx((3 - std::sqrt(5.0)) / 8).epsilon(1e-13));
  const auto ev = eigenvector_top(frozen_2x2());
  // (1/4)[[1,1],[1,2]] v = mu v  =>  v ~ (1, 4 mu - 1)
  const double x = 4 * ev.mu1 - 1, nrm = std::sqrt(1 + x * x);
  CHECK(ev.v[0] == doctest::Approx(1 / nrm).epsilon(1e-10));
  CHECK(ev.v[1] == doctest::Approx(x / nrm).epsilon(1e-10));
  CHECK(ev.v[0] > 0);
}

TEST_CASE("trace and determinant identities") {
  for (int k = 0; k < 20; ++k) {
    Stream st(5, k);
    const int n = 20 + 7 * k, m = n + 3 * k;
    const auto t = sample_loe(n, m, st);
    const auto s = eigenvalues(t);
    CHECK(std::is_sorted(s.mu.rbegin(), s.mu.rend()));
    CHECK(s.mu.back() >= 0.0);
    const double tr = std::accumulate(s.mu.begin(), s.mu.end(), 0.0);
    CHECK(tr == doctest::Approx(t.trace()).epsilon(1e-10));
    double logdet = 0, logdet_b = 0;
    for (double mu : s.mu) logdet += std::log(mu);
    for (double a : t.a) logdet_b += 2 * std::log(a) - std::log(double(m));
    CHECK(std::exp(logdet - logdet_b) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("Sturm bisection and dqds agree") {
  Stream st(17, 0);
  const auto t = sample_loe(300, 600, st);
  const auto a = eigenvalues(t, EigenMethod::sturm), b = eigenvalues(t, EigenMethod::dqds);
  for (int i = 0; i < 300; ++i) CHECK(std::abs(a.mu[i] - b.mu[i]) <= 1e-12 * std::max(1.0, a.mu[0]));
}

TEST_CASE("top eigenvector residual at n = 500") {
  for (int k = 0; k < 5; ++k) {
    Stream st(3, k);
    const auto t = sample_loe(500, 750, st);
    const auto ev = eigenvector_top(t);
    CHECK(ev.reliable);
    const auto T = t.matrix();
    const auto& d = T.diag();
    const auto& e = T.off();
    double r2 = 0, nv = 0;
    for (int i = 0; i < 500; ++i) {
      double y = (d[i] - ev.mu1) * ev.v[i];
      if (i > 0) y += e[i - 1] * ev.v[i - 1];
      if (i < 499) y += e[i] * ev.v[i + 1];
      r2 += y * y;
      nv += ev.v[i] * ev.v[i];
    }
    CHECK(std::sqrt(r2) <= 1e-10);
    CHECK(nv == doctest::Approx(1.0).epsilon(1e-14));
    for (double x : ev.v)
      if (x != 0.0) {
        CHECK(x > 0.0);
        break;
      }
  }
}

TEST_CASE("tridiagonal spectral sums agree with explicit eigenvalue sums") {
  Stream st(23, 0);
  const auto t = sample_loe(400, 800, st);
  const auto T = t.matrix();
  const ListSpectrum L(eigenvalues(t).mu);
  CHECK(T.mu1() == doctest::Approx(L.mu1()).epsilon(1e-13));
  CHECK(T.mu2() == doctest::Approx(L.mu2()).epsilon(1e-13));
  const double dp = d_plus(0.5);
  for (double x : {dp, dp - 0.3, 1.0, L.mu1() + 1e-3, 5.0})
    CHECK(T.sum_log_abs(x) == doctest::Approx(L.sum_log_abs(x)).epsilon(1e-10));
  for (double x : {L.mu1() + 1e-3, L.mu1() + 0.1, 4.0})
    for (int k = 1; k <= 3; ++k)
      CHECK(T.sum_inv_pow(x, k) == doctest::Approx(L.sum_inv_pow(x, k)).epsilon(1e-9));
  for (cplx w : {cplx(3.0, 0.01), cplx(1.0, 0.5), cplx(0.2, -0.3), cplx(L.mu1(), 1e-4), cplx(7.0, -2.0)}) {
    const cplx a = T.sum_log(w), b = L.sum_log(w);
    CHECK(std::abs(a - b) <= 1e-9 * std::abs(b));
    for (int k = 1; k <= 3; ++k) {
      const cplx c = T.sum_inv_pow(w, k), e = L.sum_inv_pow(w, k);
      CHECK(std::abs(c - e) <= 1e-8 * std::abs(e));
    }
  }
  CHECK(T.sum_log_gap_top() == doctest::Approx(L.sum_log_gap_top()).epsilon(1e-10));
  for (double x : {dp, dp - 0.05, 1.0, 0.1})
    CHECK(T.count_at_least(x) == L.count_at_least(x));
}
