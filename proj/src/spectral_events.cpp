#include "bssk/spectral_events.hpp"

#include <algorithm>
#include <cmath>

#include "bssk/errors.hpp"

namespace bssk {

int a_range(int n) {
  int j = static_cast<int>(std::floor(std::pow(static_cast<double>(n), 0.4)));
  while (std::pow(static_cast<double>(j + 1), 2.5) <= n) ++j;
  while (j > 0 && std::pow(static_cast<double>(j), 2.5) > n) --j;
  return j;
}

namespace {
double edge_term(double lambda, int j) {
  const double dp = (1 + std::sqrt(lambda)) * (1 + std::sqrt(lambda));
  return std::pow(1.5 * M_PI * std::pow(lambda, 0.75) * dp * j, 2.0 / 3.0);
}
}  // namespace

double A_j(const std::vector<double>& mu, int j, double lambda) {
  if (j < 1 || j > static_cast<int>(mu.size())) throw InvalidParameter("A_j index out of range");
  const double n = mu.size(), dp = (1 + std::sqrt(lambda)) * (1 + std::sqrt(lambda));
  return edge_term(lambda, j) - std::pow(n, 2.0 / 3.0) * (dp - mu[j - 1]);
}

EventReport check_events(const std::vector<double>& mu, const MPLaw& law, const EventParams& ep) {
  if (!(ep.s > 0 && ep.s < ep.t)) throw InvalidParameter("need 0 < s < t");
  if (!(ep.r >= 0 && ep.r < ep.R)) throw InvalidParameter("need 0 <= r < R");
  if (ep.K < 1 || !(ep.delta > 0)) throw InvalidParameter("need K >= 1 and delta > 0");
  const int n = static_cast<int>(mu.size());
  if (n < 2) throw InvalidParameter("need at least two eigenvalues");
  const double n23 = std::pow(static_cast<double>(n), 2.0 / 3.0), nd = std::pow(static_cast<double>(n), ep.delta);
  const double dp = law.d_plus(), lam = law.lambda();
  EventReport r;

  for (int i = 1; i <= n; ++i) {
    const double allowed = nd / (n23 * std::cbrt(static_cast<double>(std::min(i, n + 1 - i))));
    const double ratio = std::abs(mu[i - 1] - law.classical_location(i, n)) / allowed;
    if (ratio > r.rigidity_worst_ratio) {
      r.rigidity_worst_ratio = ratio;
      r.rigidity_worst_index = i;
    }
  }
  r.rigidity_ok = r.rigidity_worst_ratio <= 1.0;

  const int jmax = a_range(n);
  r.a_values.reserve(jmax);
  for (int j = 1; j <= jmax; ++j) r.a_values.push_back(A_j(mu, j, lam));
  for (int j = ep.K; j <= jmax; ++j) {
    const double ratio = std::abs(r.a_values[j - 1]) / (std::pow(static_cast<double>(j), 2.0 / 3.0) / 10);
    if (ratio > r.F2_worst_ratio || r.F2_worst_index == 0) {
      r.F2_worst_ratio = ratio;
      r.F2_worst_index = j;
    }
  }
  r.F2_ok = r.F2_worst_ratio <= 1.0;

  r.edge_distance = n23 * std::abs(dp - mu[0]);
  r.F3_ok = r.edge_distance >= ep.s && r.edge_distance <= ep.t;
  r.top_gap = n23 * (mu[0] - mu[1]);
  r.F4_ok = r.top_gap > ep.r && r.top_gap < ep.R;
  r.E_eps = r.rigidity_ok && r.F2_ok && r.F3_ok && r.F4_ok;
  return r;
}

int counting_N_s(const std::vector<double>& mu, double lambda, double s) {
  if (!(s > 0)) throw InvalidParameter("s must be positive");
  const double dp = (1 + std::sqrt(lambda)) * (1 + std::sqrt(lambda));
  const double cut = dp - s * std::pow(static_cast<double>(mu.size()), -2.0 / 3.0);
  return static_cast<int>(std::count_if(mu.begin(), mu.end(), [&](double x) { return x >= cut; }));
}

int counting_N_s(const SpectralView& sp, double lambda, double s) {
  if (!(s > 0)) throw InvalidParameter("s must be positive");
  const double dp = (1 + std::sqrt(lambda)) * (1 + std::sqrt(lambda));
  return sp.count_at_least(dp - s * std::pow(static_cast<double>(sp.size()), -2.0 / 3.0));
}

double counting_mean_asymptotic(double lambda, double s) {
  const double dp = (1 + std::sqrt(lambda)) * (1 + std::sqrt(lambda));
  return 2.0 / (3 * M_PI * std::pow(lambda, 0.75) * dp) * std::pow(s, 1.5);
}

double counting_variance_asymptotic(double s) { return 3.0 / (4 * M_PI * M_PI) * std::log(s); }

std::complex<double> linear_statistic_diff(const std::vector<double>& mu, const MPLaw& law, std::complex<double> z,
                                           int l, int K) {
  const int n = static_cast<int>(mu.size());
  if (l < 1 || K < 1 || K > n) throw InvalidParameter("need l >= 1 and 1 <= K <= n");
  if (z.imag() == 0.0 && z.real() >= law.d_minus() && z.real() <= mu[0])
    throw InvalidParameter("z lies on [d-, mu_1]");
  std::complex<double> sum = 0;
  for (int j = K; j <= n; ++j) sum += std::pow(z - mu[j - 1], -l);
  return sum / static_cast<double>(n) - law.truncated_moment(z, l, law.classical_location(K, n));
}

}  // namespace bssk
