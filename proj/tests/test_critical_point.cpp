#include <doctest.h>

#include <cmath>

#include "bssk/critical_point.hpp"
#include "bssk/errors.hpp"
#include "bssk/loe.hpp"
#include "bssk/model.hpp"
#include "bssk/rng.hpp"

using namespace bssk;

TEST_CASE("two-point saddle matches high-precision root") {
  ListSpectrum s({1.0, 0.5});
  const auto cp = solve_gamma(s, 0.5, 1.0);
  // tests/oracles/saddle_small.py
  CHECK(cp.gamma == doctest::Approx(3.109340946032334228905928).epsilon(1e-14));
  CHECK(cp.gamma1 == doctest::Approx(1.166425248729040396699646).epsilon(1e-14));
  CHECK(cp.gamma2 == doctest::Approx(0.6664252487290403966996456).epsilon(1e-14));
  CHECK(cp.residual <= 1e-12);
  CHECK(std::abs(4 * cp.gamma1 * cp.gamma2 / cp.gamma - 1) < 1e-12);
}

TEST_CASE("saddle on LOE samples") {
  for (int k = 0; k < 5; ++k) {
    Stream st(11, k);
    const auto p = ModelParams::critical_window(400, 800, k % 2 ? 1.0 : -1.0);
    const auto t = sample_loe(p, st);
    const auto T = t.matrix();
    const double an = alpha_n(p.n, p.m), bn = B_n(p.n, p.m, p.beta);
    const auto cp = solve_gamma(T, an, bn);
    CHECK(cp.residual <= 1e-12);
    CHECK(cp.gamma > T.mu1());
    CHECK(cp.gamma2 == doctest::Approx((-an + std::sqrt(an * an + cp.gamma * bn * bn)) / (2 * bn)).epsilon(1e-13));
    SaddleFunctions f(T, an, bn);
    CHECK(std::abs(partial_G(f, cp.gamma1, cp.gamma2, 1, 0)) < 1e-9);
    CHECK(std::abs(partial_G(f, cp.gamma1, cp.gamma2, 0, 1)) < 1e-9);
    CHECK(std::abs(eval_G(f, cp.gamma1, cp.gamma2).imag()) == 0.0);
  }
}

TEST_CASE("gamma grows as B_n shrinks") {
  ListSpectrum s({2.0, 1.0, 0.3});
  double prev = 0;
  for (double B : {1.0, 0.1, 0.01, 0.001}) {
    const double g = solve_gamma(s, 0.25, B).gamma;
    CHECK(g > prev);
    prev = g;
  }
  CHECK(prev > 1e4);
}

TEST_CASE("gamma tilde") {
  CHECK(gamma_tilde(1.0, 1.0) == doctest::Approx(4.5).epsilon(1e-15));
  for (double lam : {1.0, 0.5, 0.2}) CHECK(gamma_tilde(beta_c(lam), lam) == doctest::Approx(d_plus(lam)).epsilon(1e-14));
  // two-term expansion around beta_c
  const double lam = 0.5, d = 1e-2, bc = beta_c(lam);
  const double pred = 4 * lam / (1 + lam) * d * d - 4 * std::pow(lam, 1.25) / std::pow(1 + lam, 1.5) * d * d * d;
  for (double sgn : {-1.0, 1.0}) {
    const double dd = sgn * d;
    const double p = 4 * lam / (1 + lam) * dd * dd - 4 * std::pow(lam, 1.25) / std::pow(1 + lam, 1.5) * dd * dd * dd;
    CHECK(std::abs(gamma_tilde(bc + dd, lam) - d_plus(lam) - p) < 1e-7);
  }
  (void)pred;
}

TEST_CASE("partials agree with finite differences") {
  Stream st(5, 0);
  const auto t = sample_loe(60, 120, st);
  const auto T = t.matrix();
  const double an = alpha_n(60, 120), bn = B_n(60, 120, 1.0);
  SaddleFunctions f(T, an, bn);
  const auto cp = solve_gamma(T, an, bn);
  const cplx z1(cp.gamma1 + 0.1, 0.05), z2(cp.gamma2 + 0.1, -0.02);
  const double h = 1e-4;
  auto G = [&](cplx a, cplx b) { return eval_G(f, a, b); };
  auto rel = [](cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
  CHECK(rel(partial_G(f, z1, z2, 1, 0), (G(z1 + h, z2) - G(z1 - h, z2)) / (2 * h)) < 1e-6);
  CHECK(rel(partial_G(f, z1, z2, 0, 1), (G(z1, z2 + h) - G(z1, z2 - h)) / (2 * h)) < 1e-6);
  auto d1 = [&](cplx a, cplx b) { return partial_G(f, a, b, 1, 0); };
  auto d2 = [&](cplx a, cplx b) { return partial_G(f, a, b, 0, 1); };
  CHECK(rel(partial_G(f, z1, z2, 2, 0), (d1(z1 + h, z2) - d1(z1 - h, z2)) / (2 * h)) < 1e-6);
  CHECK(rel(partial_G(f, z1, z2, 1, 1), (d1(z1, z2 + h) - d1(z1, z2 - h)) / (2 * h)) < 1e-6);
  CHECK(rel(partial_G(f, z1, z2, 0, 2), (d2(z1, z2 + h) - d2(z1, z2 - h)) / (2 * h)) < 1e-6);
  auto d11 = [&](cplx a, cplx b) { return partial_G(f, a, b, 2, 0); };
  auto d22 = [&](cplx a, cplx b) { return partial_G(f, a, b, 0, 2); };
  CHECK(rel(partial_G(f, z1, z2, 3, 0), (d11(z1 + h, z2) - d11(z1 - h, z2)) / (2 * h)) < 1e-6);
  CHECK(rel(partial_G(f, z1, z2, 2, 1), (d11(z1, z2 + h) - d11(z1, z2 - h)) / (2 * h)) < 1e-6);
  CHECK(rel(partial_G(f, z1, z2, 1, 2), (d22(z1 + h, z2) - d22(z1 - h, z2)) / (2 * h)) < 1e-6);
  CHECK(rel(partial_G(f, z1, z2, 0, 3), (d22(z1, z2 + h) - d22(z1, z2 - h)) / (2 * h)) < 1e-6);
  CHECK_THROWS_AS(partial_G(f, z1, z2, 2, 2), InvalidParameter);
}

TEST_CASE("D_infty") {
  CHECK(discriminant_D_infty(1.0, 1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(discriminant_D_infty(beta_c(0.5), 0.5), InvalidParameter);
}

TEST_CASE("branch cut flagged") {
  ListSpectrum s({2.0, 1.0});
  SaddleFunctions f(s, 0.0, 1.0);
  CHECK_THROWS_AS(eval_G(f, 0.5, 0.5), BranchCut);
  CHECK_NOTHROW(eval_G(f, cplx(0.5, 0.1), 0.5));
}

TEST_CASE("mu1 coordinates") {
  ListSpectrum s({3.0, 2.0, 1.0});
  const auto sym = mu1_coordinates(s, 0.0, 0.7);
  CHECK(sym.mu1_1 == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
  CHECK(sym.mu1_2 == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
  const auto c = mu1_coordinates(s, 0.4, 0.7);
  CHECK(std::abs(4 * c.mu1_1 * c.mu1_2 / 3.0 - 1) < 1e-12);
  const auto c2 = split_coordinates(2.0, 0.4, 0.7);
  CHECK(c.a_plus == doctest::Approx(3.0 / (8 * c.mu1_1) + 2.0 / (8 * c2.first)).epsilon(1e-13));
}

TEST_CASE("G_hat skips the top term") {
  ListSpectrum s({3.0, 2.0, 1.0});
  SaddleFunctions f(s, 0.4, 0.7);
  const auto c = mu1_coordinates(s, 0.4, 0.7);
  const double direct = 0.7 * (c.mu1_1 + c.mu1_2) - 0.4 * std::log(c.mu1_1) - (std::log(1.0) + std::log(2.0)) / 6.0;
  CHECK(eval_G_hat(f) == doctest::Approx(direct).epsilon(1e-14));
  ListSpectrum tie({2.0, 2.0});
  CHECK_THROWS_AS(eval_G_hat(SaddleFunctions(tie, 0.1, 1.0)), DegenerateSpectrum);
}
