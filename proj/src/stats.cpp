#include "bssk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bssk/errors.hpp"
#include "bssk/rng.hpp"

namespace bssk {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> xs) : samples(std::move(xs)) {
  std::sort(samples.begin(), samples.end());
}

double EmpiricalDistribution::cdf(double x) const {
  const auto it = std::upper_bound(samples.begin(), samples.end(), x);
  return static_cast<double>(it - samples.begin()) / static_cast<double>(samples.size());
}

double ks_statistic(const EmpiricalDistribution& emp, const std::function<double(double)>& cdf) {
  const auto& s = emp.samples;
  const double n = static_cast<double>(s.size());
  if (s.empty()) throw InvalidParameter("empty sample");
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  return ks_statistic(EmpiricalDistribution(std::move(xs)), cdf);
}

double ks_pvalue(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double t = (sn + 0.12 + 0.11 / sn) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * t * t);
    p += term;
    if (std::abs(term) < 1e-16) break;
  }
  return std::clamp(p, 0.0, 1.0);
}

double mean(const std::vector<double>& x) {
  if (x.empty()) throw InvalidParameter("empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) / x.size();
}

double variance(const std::vector<double>& x) {
  if (x.size() < 2) throw InvalidParameter("need two samples for a variance");
  const double m = mean(x);
  double s = 0;
  for (double v : x) s += (v - m) * (v - m);
  return s / (x.size() - 1);
}

double quantile(std::vector<double> x, double q) {
  if (x.empty()) throw InvalidParameter("empty sample");
  std::sort(x.begin(), x.end());
  const double pos = q * (x.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= x.size()) return x.back();
  return x[i] + (pos - i) * (x[i + 1] - x[i]);
}

double median(std::vector<double> x) { return quantile(std::move(x), 0.5); }

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidParameter("bad correlation input");
  const double mx = mean(x), my = mean(y);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

CorrelationReport correlation_with_ci(const std::vector<double>& x, const std::vector<double>& y,
                                      int resamples, std::uint64_t seed, double level) {
  CorrelationReport rep;
  rep.r = pearson(x, y);
  rep.n = x.size();
  std::vector<double> rs;
  rs.reserve(resamples);
  std::vector<double> bx(x.size()), by(y.size());
  for (int k = 0; k < resamples; ++k) {
    Stream s(seed, static_cast<std::uint64_t>(k));
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto j = static_cast<std::size_t>(s.uniform() * x.size());
      bx[i] = x[j];
      by[i] = y[j];
    }
    rs.push_back(pearson(bx, by));
  }
  rep.ci_lo = quantile(rs, 0.5 * (1 - level));
  rep.ci_hi = quantile(rs, 0.5 * (1 + level));
  return rep;
}

}  // namespace bssk
