#include "bssk/critical_point.hpp"

#include <cmath>

#include "bssk/errors.hpp"
#include "bssk/model.hpp"

namespace bssk {

double saddle_lhs(const SpectralView& s, double x) { return s.sum_inv_pow(x, 1) / s.size(); }

double saddle_rhs(double x, double alpha_n, double B_n) {
  return B_n * B_n / (alpha_n + std::sqrt(alpha_n * alpha_n + x * B_n * B_n));
}

std::pair<double, double> split_coordinates(double x, double alpha, double B) {
  const double r = std::sqrt(alpha * alpha + x * B * B);
  // -alpha + r loses digits when alpha^2 >> x B^2
  return {(alpha + r) / (2 * B), x * B / (2 * (alpha + r))};
}

CriticalPoint solve_gamma(const SpectralView& s, double alpha_n, double B_n) {
  if (!(B_n > 0.0)) throw InvalidParameter("B_n must be positive");
  if (alpha_n < 0.0) throw InvalidParameter("alpha_n must be nonnegative");
  const double mu1 = s.mu1();
  auto f = [&](double x) { return saddle_lhs(s, x) - saddle_rhs(x, alpha_n, B_n); };

  double step = 1.0;
  while (!(f(mu1 + step) < 0.0)) {
    step *= 2.0;
    if (step > 1e12) throw NoRoot("saddle equation has no sign change below mu_1 + 1e12");
  }
  double lo = mu1, hi = mu1 + step;
  for (int it = 0; it < 400; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  double x = hi;
  double r = std::abs(f(hi));
  if (lo > mu1) {
    const double rl = std::abs(f(lo));
    if (rl < r) x = lo, r = rl;
  }
  const auto [g1, g2] = split_coordinates(x, alpha_n, B_n);
  return {x, g1, g2, r};
}

double gamma_tilde(double beta, double lambda) {
  if (!(beta > 0.0)) throw InvalidParameter("beta must be positive");
  const double b2 = beta * beta;
  return (1.0 + lambda) / b2 + 1.0 + lambda + lambda * b2 / (1.0 + lambda);
}

namespace {

void check_cut(const SpectralView& s, cplx w) {
  if (w.imag() == 0.0 && w.real() <= s.mu1())
    throw BranchCut("4 z1 z2 - mu_i is real and nonpositive for some i");
}

}  // namespace

cplx eval_G(const SaddleFunctions& f, cplx z1, cplx z2) {
  const cplx w = 4.0 * z1 * z2;
  check_cut(*f.spectrum, w);
  return f.B_n * (z1 + z2) - f.spectrum->sum_log(w) / (2.0 * f.n()) - f.alpha_n * std::log(z1);
}

cplx eval_G_infty(const MPLaw& law, double alpha, double B, cplx z1, cplx z2) {
  return B * (z1 + z2) - 0.5 * law.log_potential(4.0 * z1 * z2) - alpha * std::log(z1);
}

double eval_G_hat(const SaddleFunctions& f) {
  const SpectralView& s = *f.spectrum;
  if (!(s.mu1() > s.mu2())) throw DegenerateSpectrum("G_hat needs mu_1 > mu_2");
  const auto [m1, m2] = split_coordinates(s.mu1(), f.alpha_n, f.B_n);
  return f.B_n * (m1 + m2) - f.alpha_n * std::log(m1) - s.sum_log_gap_top() / (2.0 * f.n());
}

cplx partial_G(const SaddleFunctions& f, cplx z1, cplx z2, int k1, int k2) {
  if (k1 < 0 || k2 < 0 || k1 + k2 < 1 || k1 + k2 > 3) throw InvalidParameter("partial order must be 1..3");
  const cplx w = 4.0 * z1 * z2;
  check_cut(*f.spectrum, w);
  const double n = f.n(), a = f.alpha_n;
  // derivatives of g(w) = -(1/2n) sum log(w - mu)
  auto S = [&](int k) { return f.spectrum->sum_inv_pow(w, k) / n; };
  const int order = k1 + k2;
  cplx g1 = 0, g2 = 0, g3 = 0;
  g1 = -0.5 * S(1);
  if (order >= 2) g2 = 0.5 * S(2);
  if (order >= 3) g3 = -S(3);
  const cplx B = f.B_n;
  if (k1 == 1 && k2 == 0) return B + 4.0 * z2 * g1 - a / z1;
  if (k1 == 0 && k2 == 1) return B + 4.0 * z1 * g1;
  if (k1 == 2 && k2 == 0) return 16.0 * z2 * z2 * g2 + a / (z1 * z1);
  if (k1 == 0 && k2 == 2) return 16.0 * z1 * z1 * g2;
  if (k1 == 1 && k2 == 1) return 16.0 * z1 * z2 * g2 + 4.0 * g1;
  if (k1 == 3) return 64.0 * z2 * z2 * z2 * g3 - 2.0 * a / (z1 * z1 * z1);
  if (k2 == 3) return 64.0 * z1 * z1 * z1 * g3;
  if (k1 == 2) return 32.0 * z2 * g2 + 64.0 * z1 * z2 * z2 * g3;
  return 32.0 * z1 * g2 + 64.0 * z1 * z1 * z2 * g3;
}

cplx discriminant_D(const SaddleFunctions& f, cplx z1, cplx z2) {
  const cplx g11 = partial_G(f, z1, z2, 2, 0), g22 = partial_G(f, z1, z2, 0, 2);
  const cplx g12 = partial_G(f, z1, z2, 1, 1);
  return g11 * g22 - g12 * g12;
}

double discriminant_D_infty(double beta, double lambda) {
  const double bc = beta_c(lambda);
  if (!(beta < bc)) throw InvalidParameter("D_infty has a pole at beta_c; needs beta < beta_c");
  const double b4 = std::pow(beta, 4), bc4 = std::pow(bc, 4);
  return 4.0 * b4 / (lambda * lambda * (bc4 - b4));
}

Mu1Coordinates mu1_coordinates(const SpectralView& s, double alpha_n, double B_n) {
  const auto [m1, m2] = split_coordinates(s.mu1(), alpha_n, B_n);
  const auto p2 = split_coordinates(s.mu2(), alpha_n, B_n);
  return {m1, m2, 0.5 * (m2 + p2.second)};
}

}  // namespace bssk
