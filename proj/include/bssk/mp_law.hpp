#pragma once

#include <complex>
#include <vector>

namespace bssk {

class MPLaw {
 public:
  explicit MPLaw(double lambda, int cache_nodes = 10000);

  double lambda() const { return lambda_; }
  double d_minus() const { return dm_; }
  double d_plus() const { return dp_; }

  double density(double x) const;
  // Mass below x, from the closed-form antiderivative in the angle variable.
  double cdf(double x) const;
  // Mass above x, computed without cancellation near d+.
  double upper_mass(double x) const;
  // Mass of [lo, hi] by adaptive quadrature of the density (oracle path).
  double mass_quadrature(double lo, double hi) const;

  // s(z) = int p(x)/(z - x) dx, branch with s ~ 1/z at infinity.
  std::complex<double> stieltjes(std::complex<double> z) const;
  // H(z) = int log(z - x) p(x) dx by adaptive quadrature.
  std::complex<double> log_potential(std::complex<double> z) const;
  double log_potential(double z) const;
  // int_{d-}^{upper} (z - y)^{-l} p(y) dy.
  std::complex<double> truncated_moment(std::complex<double> z, int l, double upper) const;

  // g_i with i/n = mass above g_i.
  double classical_location(int i, int n) const;
  // Edge asymptotic d+ - (3 pi lambda^{3/4} d+ i/(2n))^{2/3}.
  double classical_location_edge(int i, int n) const;

  const std::vector<double>& cache_mass() const { return cache_mass_; }
  const std::vector<double>& cache_x() const { return cache_x_; }

 private:
  double theta_of(double x) const;
  double x_of(double theta) const;
  double upper_mass_theta(double theta) const;
  double weight_theta(double theta) const;
  std::complex<double> gap_theta(std::complex<double> z, double theta) const;

  double lambda_, dm_, dp_, c0_, r_;
  std::vector<double> cache_mass_, cache_x_;  // upper mass, descending in x
};

// 1/(sqrt(lambda)(1 + sqrt(lambda))), the Stieltjes transform at d+.
double s_mp_edge(double lambda);

}  // namespace bssk
