#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace bssk {

double normal_cdf(double x);

struct EmpiricalDistribution {
  std::vector<double> samples;  // ascending
  explicit EmpiricalDistribution(std::vector<double> xs);
  double cdf(double x) const;
  std::size_t size() const { return samples.size(); }
};

// Two-sided Kolmogorov-Smirnov distance sup |F_n - F|.
double ks_statistic(const EmpiricalDistribution& emp, const std::function<double(double)>& cdf);
double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf);
// Asymptotic p-value of the one-sample KS statistic.
double ks_pvalue(double d, std::size_t n);

double mean(const std::vector<double>& x);
double variance(const std::vector<double>& x);  // unbiased
double median(std::vector<double> x);
double quantile(std::vector<double> x, double q);
double pearson(const std::vector<double>& x, const std::vector<double>& y);

struct CorrelationReport {
  double r = 0, ci_lo = 0, ci_hi = 0;
  std::size_t n = 0;
};
// Pearson correlation with a percentile bootstrap interval.
CorrelationReport correlation_with_ci(const std::vector<double>& x, const std::vector<double>& y,
                                      int resamples, std::uint64_t seed, double level = 0.95);

}  // namespace bssk
