#pragma once

#include <cstdint>

namespace bssk {

// Which printed TW1 coefficient of the low-temperature limit law to use.
enum class CoeffVariant { theorem, lemma };

// Denominator of the log argument in A(x, B): 2B or B.
enum class AVariant { two_b, one_b };

const char* to_string(CoeffVariant v);
const char* to_string(AVariant v);
CoeffVariant coeff_variant_from(const char* s);
AVariant a_variant_from(const char* s);

struct ModelParams {
  int n = 2;
  int m = 2;
  double beta = 1.0;
  double b = 0.0;
  std::uint64_t seed = 0;
  bool window = false;  // beta derived from b

  // beta = beta_c + b n^{-1/3} sqrt(log n)
  static ModelParams critical_window(int n, int m, double b, std::uint64_t seed = 0);
  static ModelParams fixed_beta(int n, int m, double beta, std::uint64_t seed = 0);

  double lambda() const { return static_cast<double>(n) / static_cast<double>(m); }
  void validate() const;
};

struct ModelConstants {
  double lambda, beta_c, d_plus, d_minus, alpha, B, B_c, C_lambda, f_lambda;
  double alpha_n, B_n;
};

ModelConstants constants_for(const ModelParams& p);

double beta_c(double lambda);
double d_plus(double lambda);
double d_minus(double lambda);
double alpha_of(double lambda);
double B_of(double beta, double lambda);
double alpha_n(int n, int m);
double B_n(int n, int m, double beta);
double C_lambda(double lambda);
double f_lambda(double lambda);
double window_beta(int n, double b, double lambda);

// Closed form lambda^{-3/4}.
double B_c(double lambda);
// Root of (sqrt(alpha^2 + d+ B^2) - alpha)/d+ = 1/(sqrt(lambda)(1 + sqrt(lambda))) by bisection.
double B_c_bisect(double lambda);

double A_fn(double x, double B, double lambda, AVariant v);

// TW1 coefficient of the limit law; zero for b <= 0.
double limit_coefficient(double b, double lambda, CoeffVariant v);

}  // namespace bssk
