#include "bssk/model.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "bssk/errors.hpp"

namespace bssk {

const char* to_string(CoeffVariant v) { return v == CoeffVariant::theorem ? "theorem" : "lemma"; }
const char* to_string(AVariant v) { return v == AVariant::two_b ? "two_b" : "one_b"; }

CoeffVariant coeff_variant_from(const char* s) {
  if (std::strcmp(s, "theorem") == 0) return CoeffVariant::theorem;
  if (std::strcmp(s, "lemma") == 0) return CoeffVariant::lemma;
  throw InvalidParameter(std::string("unknown coefficient variant: ") + s);
}

AVariant a_variant_from(const char* s) {
  if (std::strcmp(s, "two_b") == 0) return AVariant::two_b;
  if (std::strcmp(s, "one_b") == 0) return AVariant::one_b;
  throw InvalidParameter(std::string("unknown A variant: ") + s);
}

void ModelParams::validate() const {
  if (n < 2) throw InvalidParameter("n must be at least 2");
  if (m < n) throw InvalidParameter("m must be at least n");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidParameter("beta must be positive");
}

ModelParams ModelParams::critical_window(int n, int m, double b, std::uint64_t seed) {
  ModelParams p;
  p.n = n;
  p.m = m;
  p.b = b;
  p.seed = seed;
  p.window = true;
  if (n < 2) throw InvalidParameter("n must be at least 2");
  if (m < n) throw InvalidParameter("m must be at least n");
  p.beta = window_beta(n, b, p.lambda());
  p.validate();
  return p;
}

ModelParams ModelParams::fixed_beta(int n, int m, double beta, std::uint64_t seed) {
  ModelParams p;
  p.n = n;
  p.m = m;
  p.beta = beta;
  p.seed = seed;
  p.validate();
  return p;
}

double beta_c(double lambda) { return std::sqrt(1.0 + lambda) / std::pow(lambda, 0.25); }
double d_plus(double lambda) { return (1.0 + std::sqrt(lambda)) * (1.0 + std::sqrt(lambda)); }
double d_minus(double lambda) { return (1.0 - std::sqrt(lambda)) * (1.0 - std::sqrt(lambda)); }
double alpha_of(double lambda) { return (1.0 - lambda) / (2.0 * lambda); }
double B_of(double beta, double lambda) { return beta / std::sqrt(lambda * (1.0 + lambda)); }
double alpha_n(int n, int m) { return static_cast<double>(m - n) / (2.0 * n); }

double B_n(int n, int m, double beta) {
  const double dn = n, dm = m;
  return dm * beta / std::sqrt(dn * (dn + dm));
}

double C_lambda(double lambda) {
  const double s = std::sqrt(lambda);
  return (1.0 - 1.0 / lambda) * std::log1p(s) + std::log(s) + 1.0 / s;
}

double f_lambda(double lambda) {
  const double r = (lambda - 1.0) / (lambda + 1.0);
  return -0.5 + 0.5 * r * std::log(2.0) + 0.25 * r * std::log(lambda) + 0.25 * std::log1p(lambda);
}

double window_beta(int n, double b, double lambda) {
  const double dn = n;
  return beta_c(lambda) + b * std::pow(dn, -1.0 / 3.0) * std::sqrt(std::log(dn));
}

double B_c(double lambda) { return std::pow(lambda, -0.75); }

double B_c_bisect(double lambda) {
  const double a = alpha_of(lambda), dp = d_plus(lambda);
  const double target = 1.0 / (std::sqrt(lambda) * (1.0 + std::sqrt(lambda)));
  auto f = [&](double B) { return (std::sqrt(a * a + dp * B * B) - a) / dp - target; };
  double lo = 0.0, hi = 1.0;
  while (f(hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double A_fn(double x, double B, double lambda, AVariant v) {
  const double a = alpha_of(lambda);
  const double r = std::sqrt(a * a + x * B * B);
  const double den = v == AVariant::two_b ? 2.0 * B : B;
  return r - a * std::log((a + r) / den);
}

double limit_coefficient(double b, double lambda, CoeffVariant v) {
  if (b <= 0.0) return 0.0;
  const double s = std::sqrt(lambda);
  const double edge = std::pow(1.0 + s, 2.0 / 3.0);
  if (v == CoeffVariant::theorem)
    return std::sqrt(6.0) * std::sqrt(1.0 + lambda) * b / (std::pow(lambda, 0.75) * edge);
  return std::sqrt(6.0) * std::pow(lambda, 0.25) * b / (std::sqrt(1.0 + lambda) * edge);
}

ModelConstants constants_for(const ModelParams& p) {
  const double lam = p.lambda();
  ModelConstants c{};
  c.lambda = lam;
  c.beta_c = beta_c(lam);
  c.d_plus = d_plus(lam);
  c.d_minus = d_minus(lam);
  c.alpha = alpha_of(lam);
  c.B = B_of(p.beta, lam);
  c.B_c = B_c(lam);
  c.C_lambda = C_lambda(lam);
  c.f_lambda = f_lambda(lam);
  c.alpha_n = alpha_n(p.n, p.m);
  c.B_n = B_n(p.n, p.m, p.beta);
  return c;
}

}  // namespace bssk
