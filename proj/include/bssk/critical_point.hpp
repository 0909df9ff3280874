#pragma once

#include <complex>

#include "bssk/mp_law.hpp"
#include "bssk/tridiag.hpp"

namespace bssk {

struct CriticalPoint {
  double gamma = 0, gamma1 = 0, gamma2 = 0;
  double residual = 0;  // |L(gamma) - R(gamma)|
};

// G(z1, z2) = B_n(z1 + z2) - (1/2n) sum log(4 z1 z2 - mu_i) - alpha_n log z1
struct SaddleFunctions {
  const SpectralView* spectrum;
  double alpha_n, B_n;
  SaddleFunctions(const SpectralView& s, double a, double b) : spectrum(&s), alpha_n(a), B_n(b) {}
  int n() const { return spectrum->size(); }
};

// Two sides of the saddle equation (1/n) sum 1/(x - mu_i) = B_n^2/(alpha_n + sqrt(alpha_n^2 + x B_n^2)).
double saddle_lhs(const SpectralView& s, double x);
double saddle_rhs(double x, double alpha_n, double B_n);

// (alpha + sqrt(alpha^2 + x B^2))/(2B) and (-alpha + sqrt(alpha^2 + x B^2))/(2B).
std::pair<double, double> split_coordinates(double x, double alpha, double B);

CriticalPoint solve_gamma(const SpectralView& s, double alpha_n, double B_n);

double gamma_tilde(double beta, double lambda);

cplx eval_G(const SaddleFunctions& f, cplx z1, cplx z2);
cplx eval_G_infty(const MPLaw& law, double alpha, double B, cplx z1, cplx z2);
double eval_G_hat(const SaddleFunctions& f);

// d^{k1+k2} G / dz1^{k1} dz2^{k2}, 1 <= k1 + k2 <= 3.
cplx partial_G(const SaddleFunctions& f, cplx z1, cplx z2, int k1, int k2);
cplx discriminant_D(const SaddleFunctions& f, cplx z1, cplx z2);
// 4 beta^4/(lambda^2 (beta_c^4 - beta^4)); throws for beta >= beta_c.
double discriminant_D_infty(double beta, double lambda);

struct Mu1Coordinates {
  double mu1_1, mu1_2;
  double a_plus;  // (mu_1^(2) + mu_2^(2))/2
};
Mu1Coordinates mu1_coordinates(const SpectralView& s, double alpha_n, double B_n);

}  // namespace bssk
