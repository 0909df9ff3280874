#pragma once

#include <string>
#include <vector>

#include "bssk/model.hpp"
#include "bssk/rng.hpp"
#include "bssk/tridiag.hpp"

namespace bssk {

struct EdgeStatistics {
  double T0n = 0.0;  // NaN when gamma_tilde <= mu_1
  double T1n = 0.0;
  double T2n = 0.0;
  bool T0n_defined = false;
};

// Drift constants of the shifted log-determinant.
double edge_C1(double lambda);
double edge_C2(double lambda);

// sum_i log|d+ - mu_i|; throws DegenerateSpectrum when an eigenvalue sits on d+.
double T1n_from_sum(double sum_log, int n, double lambda);
double T1n(const SpectralView& s, int n, double lambda);
double T2n(double mu1, int n, double lambda);
// Defined for gamma_tilde > mu_1; throws DegenerateSpectrum otherwise.
double T0n(const SpectralView& s, int n, double lambda, double beta);

EdgeStatistics compute_T_statistics(const SpectralView& s, const ModelParams& p);

// The normalised shifted log-determinant at gamma = d+ + sigma n^{-2/3}.
// sigma^{3/2} is read as max(sigma, 0)^{3/2}; for bounded negative sigma the term is O(1).
// At sigma = 0 it equals -T1n.
double clt_statistic(const SpectralView& s, int n, double lambda, double sigma);

// n^{2/3}(mu - d+)/(sqrt(lambda)(1+sqrt(lambda))^{4/3})
double edge_rescale(double mu, int n, double lambda);

// Tabulated TW1 distribution function on [-10, 6].
class TWReference {
 public:
  TWReference(std::vector<double> x, std::vector<double> cdf);
  static TWReference load(const std::string& path);
  static std::string default_path();
  static const TWReference& builtin();

  double cdf(double x) const;
  double quantile(double u) const;
  double sample(Stream& s) const;
  double mean() const;
  double sd() const;
  const std::vector<double>& grid() const { return x_; }
  const std::vector<double>& values() const { return F_; }

 private:
  std::vector<double> x_, F_;
  std::vector<double> slope_;  // monotone cubic Hermite slopes
};

// N(0,1) + c TW1 with independent components.
class LimitLaw {
 public:
  LimitLaw(const TWReference& tw, double c, double step = 0.005);
  double cdf(double x) const;
  double sample(Stream& s) const;
  double c() const { return c_; }
  double mean() const;
  double variance() const;

 private:
  const TWReference* tw_;
  double c_, x0_ = 0, h_ = 0;
  std::vector<double> table_;
};

double limit_law_sample(const TWReference& tw, double b, double lambda, CoeffVariant v, Stream& s);

}  // namespace bssk
