#include "bssk/mp_law.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "bssk/errors.hpp"

namespace bssk {

namespace {
using boost::math::quadrature::gauss_kronrod;
using cplx = std::complex<double>;

template <class F>
double integrate(F f, double a, double b, double tol = 1e-13) {
  return gauss_kronrod<double, 31>::integrate(f, a, b, 20, tol);
}
}  // namespace

// Density in the angle variable, p(x(th)) x'(th), with x = d- + 4 sqrt(l) sin^2(th/2).
double MPLaw::weight_theta(double th) const {
  const double s = std::sqrt(lambda_), h = std::sin(0.5 * th), c = std::cos(0.5 * th);
  const double x = dm_ + 4 * s * h * h;
  if (x == 0.0) return 2 * s * c * c / (M_PI * lambda_);
  const double sn = 2 * h * c;
  return r_ * r_ * sn * sn / (2 * M_PI * lambda_ * x);
}

// z - x(th), exact near the upper edge.
cplx MPLaw::gap_theta(cplx z, double th) const {
  const double c = std::cos(0.5 * th);
  return (z - dp_) + 2 * r_ * c * c;
}

double s_mp_edge(double lambda) {
  const double s = std::sqrt(lambda);
  return 1.0 / (s * (1.0 + s));
}

MPLaw::MPLaw(double lambda, int cache_nodes) : lambda_(lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw InvalidParameter("lambda must lie in (0, 1]");
  const double s = std::sqrt(lambda);
  dm_ = (1 - s) * (1 - s);
  dp_ = (1 + s) * (1 + s);
  c0_ = 1 + lambda;
  r_ = 2 * s;
  // Chebyshev nodes in x are uniform in theta.
  cache_mass_.resize(cache_nodes + 1);
  cache_x_.resize(cache_nodes + 1);
  for (int k = 0; k <= cache_nodes; ++k) {
    const double th = M_PI * (1.0 - static_cast<double>(k) / cache_nodes);
    cache_x_[k] = x_of(th);
    cache_mass_[k] = upper_mass_theta(th);
  }
  cache_x_.front() = dp_;
  cache_mass_.front() = 0.0;
  cache_x_.back() = dm_;
  cache_mass_.back() = 1.0;
}

double MPLaw::theta_of(double x) const {
  return std::acos(std::clamp((c0_ - x) / r_, -1.0, 1.0));
}

double MPLaw::x_of(double th) const { return c0_ - r_ * std::cos(th); }

// Mass on [x(theta), d+]:
// 1 - [ (1+l) th + 2 sqrt(l) sin th - 2 (1-l) atan(k tan(th/2)) ] / (2 pi l),
// k = (1+sqrt l)/(1-sqrt l). Written in the complementary angle to avoid cancellation.
double MPLaw::upper_mass_theta(double th) const {
  const double l = lambda_, s = std::sqrt(l);
  const double phi = M_PI - th;  // in [0, pi]
  // atan(k tan(th/2)) = pi/2 - atan(cot(th/2)/k) = pi/2 - atan(tan(phi/2)/k)
  double at = 0.0;
  if (l < 1.0) {
    const double kinv = (1 - s) / (1 + s);
    at = std::atan(kinv * std::tan(0.5 * phi));
  }
  const double val = (1 + l) * phi - 2 * s * std::sin(phi) - 2 * (1 - l) * at;
  return std::clamp(val / (2 * M_PI * l), 0.0, 1.0);
}

double MPLaw::density(double x) const {
  if (x <= dm_ || x >= dp_) return 0.0;
  return std::sqrt((dp_ - x) * (x - dm_)) / (2 * M_PI * lambda_ * x);
}

double MPLaw::upper_mass(double x) const {
  if (x >= dp_) return 0.0;
  if (x <= dm_) return 1.0;
  return upper_mass_theta(theta_of(x));
}

double MPLaw::cdf(double x) const { return 1.0 - upper_mass(x); }

double MPLaw::mass_quadrature(double lo, double hi) const {
  lo = std::max(lo, dm_);
  hi = std::min(hi, dp_);
  if (hi <= lo) return 0.0;
  return integrate([&](double th) { return weight_theta(th); }, theta_of(lo), theta_of(hi));
}

cplx MPLaw::stieltjes(cplx z) const {
  const cplx root = std::sqrt(z - dm_) * std::sqrt(z - dp_);
  return (z + lambda_ - 1.0 - root) / (2 * lambda_ * z);
}

cplx MPLaw::log_potential(cplx z) const {
  auto fr = [&](double th) { return std::log(gap_theta(z, th)).real() * weight_theta(th); };
  auto fi = [&](double th) { return std::log(gap_theta(z, th)).imag() * weight_theta(th); };
  const double re = integrate(fr, 0.0, M_PI);
  const double im = z.imag() == 0.0 ? 0.0 : integrate(fi, 0.0, M_PI);
  return {re, im};
}

double MPLaw::log_potential(double z) const {
  if (z < dp_) throw InvalidParameter("log potential needs z >= d+");
  return log_potential(cplx(z, 0.0)).real();
}

cplx MPLaw::truncated_moment(cplx z, int l, double upper) const {
  const double th_hi = theta_of(std::min(upper, dp_));
  if (upper <= dm_) return 0.0;
  auto fr = [&](double th) { return std::pow(gap_theta(z, th), -l).real() * weight_theta(th); };
  auto fi = [&](double th) { return std::pow(gap_theta(z, th), -l).imag() * weight_theta(th); };
  return {integrate(fr, 0.0, th_hi, 1e-12), integrate(fi, 0.0, th_hi, 1e-12)};
}

double MPLaw::classical_location(int i, int n) const {
  if (i < 1 || i > n) throw InvalidParameter("classical location index out of range");
  const double target = static_cast<double>(i) / n;
  if (i == n) return dm_;
  // bracket from the cache (upper mass increases along the cache)
  const auto it = std::lower_bound(cache_mass_.begin(), cache_mass_.end(), target);
  std::size_t k = static_cast<std::size_t>(it - cache_mass_.begin());
  k = std::clamp<std::size_t>(k, 1, cache_mass_.size() - 1);
  double th_lo = M_PI * (1.0 - static_cast<double>(k) / (cache_mass_.size() - 1));
  double th_hi = M_PI * (1.0 - static_cast<double>(k - 1) / (cache_mass_.size() - 1));
  // upper mass decreases in theta
  for (int it2 = 0; it2 < 200 && th_hi - th_lo > 1e-16; ++it2) {
    const double mid = 0.5 * (th_lo + th_hi);
    if (upper_mass_theta(mid) > target)
      th_lo = mid;
    else
      th_hi = mid;
  }
  return x_of(0.5 * (th_lo + th_hi));
}

double MPLaw::classical_location_edge(int i, int n) const {
  const double t = 3 * M_PI * std::pow(lambda_, 0.75) * dp_ * i / (2.0 * n);
  return dp_ - std::pow(t, 2.0 / 3.0);
}

}  // namespace bssk
