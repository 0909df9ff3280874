#pragma once

#include <complex>
#include <vector>

#include "bssk/mp_law.hpp"
#include "bssk/tridiag.hpp"

namespace bssk {

struct EventParams {
  double delta = 0.1;
  int K = 1;
  double s = 0.05, t = 10.0;  // window for n^{2/3}|d+ - mu_1|
  double r = 0.0, R = 1e300;  // window for n^{2/3}(mu_1 - mu_2)
};

struct EventReport {
  bool rigidity_ok = true;
  int rigidity_worst_index = 1;     // 1-based
  double rigidity_worst_ratio = 0;  // |mu_i - g_i| / allowed
  bool F2_ok = true;
  int F2_worst_index = 0;  // 0 when the index range is empty
  double F2_worst_ratio = 0;
  bool F3_ok = true;
  bool F4_ok = true;
  bool E_eps = true;
  double edge_distance = 0;  // n^{2/3}|d+ - mu_1|
  double top_gap = 0;        // n^{2/3}(mu_1 - mu_2)
  std::vector<double> a_values;  // A_j, j = 1 .. floor(n^{2/5})
};

// Largest j with j <= n^{2/5}.
int a_range(int n);

// A_j = (3 pi lambda^{3/4} d+ j/2)^{2/3} - n^{2/3}(d+ - mu_j)
double A_j(const std::vector<double>& mu, int j, double lambda);

// mu descending; classical locations taken from law.
EventReport check_events(const std::vector<double>& mu, const MPLaw& law, const EventParams& ep);

// #{i : mu_i >= d+ - s n^{-2/3}}
int counting_N_s(const std::vector<double>& mu, double lambda, double s);
int counting_N_s(const SpectralView& sp, double lambda, double s);
double counting_mean_asymptotic(double lambda, double s);
// 3/(4 pi^2) log s: the complex-ensemble constant; the real ensemble has twice this slope.
double counting_variance_asymptotic(double s);

// (1/n) sum_{j >= K} (z - mu_j)^{-l} - int_{d-}^{g_K} (z - y)^{-l} p(y) dy
std::complex<double> linear_statistic_diff(const std::vector<double>& mu, const MPLaw& law, std::complex<double> z,
                                           int l, int K);

}  // namespace bssk
