#include "bssk/free_energy.hpp"

#include <cmath>

#include "bssk/edge_stats.hpp"
#include "bssk/errors.hpp"

namespace bssk {

const char* to_string(Side s) { return s == Side::high ? "high" : "low"; }

double fluctuation_statistic(double F_finite, double F_limit, int n, int m) {
  const double ln = std::log(static_cast<double>(n)), N = n + m;
  return N / std::sqrt(ln / 6.0) * (F_finite - F_limit + ln / (12.0 * N));
}

double F_limit_high(double beta, double lambda) {
  const double bc = beta_c(lambda);
  return beta * beta / (2 * std::pow(bc, 4));
}

double F_limit_low(double beta, double lambda, AVariant v) {
  const double w = lambda / (1 + lambda);
  return f_lambda(lambda) + w * A_fn(d_plus(lambda), B_of(beta, lambda), lambda, v) - 0.5 * std::log(beta) -
         0.5 * w * C_lambda(lambda);
}

double F_limit(double beta, double lambda, AVariant v) {
  if (!(beta > 0)) throw InvalidParameter("beta must be positive");
  return beta < beta_c(lambda) ? F_limit_high(beta, lambda) : F_limit_low(beta, lambda, v);
}

double log_Qn_steepest_descent(const CriticalPoint& cp, const SaddleFunctions& f) {
  const double D = discriminant_D(f, cp.gamma1, cp.gamma2).real();
  if (!(D > 0)) throw InvalidParameter("steepest descent needs D > 0 at the saddle");
  const double n = f.n();
  // 2D Gaussian integral: 2 pi/(n sqrt(D))
  return n * eval_G(f, cp.gamma1, cp.gamma2).real() + std::log(2 * M_PI) - std::log(n) - 0.5 * std::log(D);
}

double F_from_log_Q(double log_Q, int n, int m, double beta) {
  return (log_Q + log_contour_prefactor(n, m, beta)) / (n + m);
}

FreeEnergyReport F_finite_high(const SpectralView& s, const ModelParams& p) {
  p.validate();
  const int n = p.n, m = p.m;
  const double lam = p.lambda(), beta = p.beta, N = n + m;
  const double gt = gamma_tilde(beta, lam);
  if (!(gt > s.mu1())) throw DegenerateSpectrum("mu_1 >= gamma_tilde: high-temperature formula undefined");
  const double ln = std::log(static_cast<double>(n));
  const double b2 = beta * beta;
  FreeEnergyReport r;
  r.side = Side::high;
  r.F_finite = -s.sum_log_abs(gt) / (2 * N) + lam * b2 / ((1 + lam) * (1 + lam)) -
               (1 - lam) / (2 * (1 + lam)) * std::log(1 + lam + b2 * lam) - lam / (1 + lam) * std::log(beta) +
               std::log(1 + lam) / (2 * (lam + 1)) - ln / (6 * N);
  r.F_limit = F_limit(beta, lam);
  r.statistic = fluctuation_statistic(r.F_finite, r.F_limit, n, m);
  const double t0 = T0n(s, n, lam, beta);
  r.diagnostics["T0n"] = t0;
  r.diagnostics["gamma_tilde"] = gt;
  r.diagnostics["T0_route"] = r.F_limit - ln / (12 * N) + std::sqrt(ln / 6) / N * t0;
  const double an = alpha_n(n, m), bn = B_n(n, m, beta);
  SaddleFunctions f(s, an, bn);
  const auto cp = solve_gamma(s, an, bn);
  r.diagnostics["gamma"] = cp.gamma;
  r.diagnostics["G_saddle"] = eval_G(f, cp.gamma1, cp.gamma2).real();
  r.diagnostics["D"] = discriminant_D(f, cp.gamma1, cp.gamma2).real();
  r.diagnostics["T1n"] = T1n(s, n, lam);
  r.diagnostics["T2n"] = T2n(s.mu1(), n, lam);
  return r;
}

FreeEnergyReport F_finite_low(const SpectralView& s, const ModelParams& p, CoeffVariant v) {
  p.validate();
  const int n = p.n, m = p.m;
  const double lam = p.lambda(), beta = p.beta, N = n + m;
  const double ln = std::log(static_cast<double>(n));
  const double t1 = T1n(s, n, lam), t2 = T2n(s.mu1(), n, lam);
  const double c = limit_coefficient(p.b, lam, v);
  const double w = lam / (1 + lam);
  FreeEnergyReport r;
  r.side = Side::low;
  r.F_finite = f_lambda(lam) + w * A_fn(d_plus(lam), B_of(beta, lam), lam, AVariant::two_b) - 0.5 * std::log(beta) -
               0.5 * w * C_lambda(lam) - ln / (12 * N) + std::sqrt(ln / 6) / N * (t1 + c * t2);
  r.F_limit = F_limit(beta, lam);
  r.statistic = fluctuation_statistic(r.F_finite, r.F_limit, n, m);
  r.diagnostics["T1n"] = t1;
  r.diagnostics["T2n"] = t2;
  r.diagnostics["coefficient"] = c;
  const double an = alpha_n(n, m), bn = B_n(n, m, beta);
  const double gh = eval_G_hat(SaddleFunctions(s, an, bn));
  r.diagnostics["G_hat"] = gh;
  double log_S = -5.0 / 6.0 * ln;
  if (p.b > 0) log_S -= 0.5 * std::log(p.b * std::sqrt(ln));
  r.diagnostics["log_S_asymptotic"] = log_S;
  r.diagnostics["G_hat_route"] =
      (n * gh + log_S) / N + f_lambda(lam) - 0.5 * std::log(beta) + lam / (1 + lam) * ln / n;
  return r;
}

LowTemperatureDirect F_finite_low_direct(const SpectralView& s, const ModelParams& p, const QuadratureConfig& cfg) {
  p.validate();
  const double an = alpha_n(p.n, p.m), bn = B_n(p.n, p.m, p.beta);
  SaddleFunctions f(s, an, bn);
  const auto k = kn_quadrature(f, cfg);
  if (!(k.K > 0)) throw ToleranceNotMet("K_n quadrature returned a nonpositive value");
  LowTemperatureDirect d;
  d.G_hat = eval_G_hat(f);
  d.K_n = k.K;
  d.I11 = k.I11;
  d.log_Q = p.n * d.G_hat + std::log(k.I11) + std::log(k.K);
  d.F_finite = F_from_log_Q(d.log_Q, p.n, p.m, p.beta);
  d.statistic = fluctuation_statistic(d.F_finite, F_limit(p.beta, p.lambda()), p.n, p.m);
  return d;
}

}  // namespace bssk
