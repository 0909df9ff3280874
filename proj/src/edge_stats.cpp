#include "bssk/edge_stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bssk/critical_point.hpp"
#include "bssk/errors.hpp"
#include "bssk/stats.hpp"

namespace bssk {

double edge_C1(double lambda) {
  const double s = std::sqrt(lambda);
  return 1.0 / (s * (1.0 + s));
}

double edge_C2(double lambda) {
  const double s = std::sqrt(lambda);
  return 2.0 / (3.0 * std::pow(lambda, 0.75) * (1.0 + s) * (1.0 + s));
}

double T1n_from_sum(double sum_log, int n, double lambda) {
  if (!std::isfinite(sum_log)) throw DegenerateSpectrum("eigenvalue at d+: log|d+ - mu| undefined");
  const double ln = std::log(static_cast<double>(n));
  return (C_lambda(lambda) * n - ln / 6.0 - sum_log) / std::sqrt(2.0 * ln / 3.0);
}

double T1n(const SpectralView& s, int n, double lambda) {
  const double dp = d_plus(lambda);
  if (s.count_at_least(dp) != s.count_at_least(std::nextafter(dp, 1e300)))
    throw DegenerateSpectrum("eigenvalue at d+: log|d+ - mu| undefined");
  return T1n_from_sum(s.sum_log_abs(dp), n, lambda);
}

double edge_rescale(double mu, int n, double lambda) {
  const double s = std::sqrt(lambda);
  return std::pow(static_cast<double>(n), 2.0 / 3.0) * (mu - d_plus(lambda)) /
         (s * std::pow(1.0 + s, 4.0 / 3.0));
}

double T2n(double mu1, int n, double lambda) { return edge_rescale(mu1, n, lambda); }

double T0n(const SpectralView& s, int n, double lambda, double beta) {
  const double gt = gamma_tilde(beta, lambda);
  if (!(gt > s.mu1())) throw DegenerateSpectrum("gamma_tilde <= mu_1: T0n undefined");
  const double dn = n, ln = std::log(dn), dg = gt - d_plus(lambda);
  const double num = s.sum_log_abs(gt) - C_lambda(lambda) * dn - edge_C1(lambda) * dn * dg +
                     edge_C2(lambda) * dn * std::pow(dg, 1.5) + ln / 6.0;
  return -num / std::sqrt(2.0 * ln / 3.0);
}

EdgeStatistics compute_T_statistics(const SpectralView& s, const ModelParams& p) {
  EdgeStatistics e;
  const double lam = p.lambda();
  e.T1n = T1n(s, p.n, lam);
  e.T2n = T2n(s.mu1(), p.n, lam);
  e.T0n = std::nan("");
  if (gamma_tilde(p.beta, lam) > s.mu1()) {
    e.T0n = T0n(s, p.n, lam, p.beta);
    e.T0n_defined = true;
  }
  return e;
}

double clt_statistic(const SpectralView& s, int n, double lambda, double sigma) {
  if (!std::isfinite(sigma)) throw InvalidParameter("sigma_n must be finite");
  const double dn = n, ln = std::log(dn);
  const double g = d_plus(lambda) + sigma * std::pow(dn, -2.0 / 3.0);
  const double sum = s.sum_log_abs(g);
  if (!std::isfinite(sum)) throw DegenerateSpectrum("eigenvalue at the evaluation point");
  const double num = sum - C_lambda(lambda) * dn - edge_C1(lambda) * sigma * std::cbrt(dn) +
                     edge_C2(lambda) * std::pow(std::max(sigma, 0.0), 1.5) + ln / 6.0;
  return num / std::sqrt(2.0 * ln / 3.0);
}

// ------------------------------------------------------------------ TW table

TWReference::TWReference(std::vector<double> x, std::vector<double> F) : x_(std::move(x)), F_(std::move(F)) {
  const std::size_t n = x_.size();
  if (n < 4 || F_.size() != n) throw TableError("TW table needs matching columns");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) throw TableError("TW grid not strictly increasing");
    if (F_[i] < F_[i - 1]) throw TableError("TW cdf not monotone");
  }
  if (F_.front() < 0.0 || F_.back() > 1.0) throw TableError("TW cdf outside [0, 1]");
  // Fritsch-Carlson slopes
  std::vector<double> h(n - 1), del(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    del[i] = (F_[i + 1] - F_[i]) / h[i];
  }
  slope_.assign(n, 0.0);
  slope_[0] = del[0];
  slope_[n - 1] = del[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (del[i - 1] * del[i] <= 0.0) continue;
    const double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
    slope_[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
  }
}

TWReference TWReference::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TableError("cannot open TW table " + path);
  std::string line;
  std::getline(in, line);
  if (line.rfind("x,cdf", 0) != 0) throw TableError("TW table header must be x,cdf");
  std::vector<double> x, F;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream ss(line);
    std::string a, b;
    std::getline(ss, a, ',');
    std::getline(ss, b);
    x.push_back(std::stod(a));
    F.push_back(std::stod(b));
  }
  return TWReference(std::move(x), std::move(F));
}

std::string TWReference::default_path() { return std::string(BSSK_DATA_DIR) + "/tw1_cdf.csv"; }

const TWReference& TWReference::builtin() {
  static const TWReference ref = load(default_path());
  return ref;
}

double TWReference::cdf(double x) const {
  if (x <= x_.front()) return F_.front();
  if (x >= x_.back()) return F_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  return std::clamp(h00 * F_[i] + h10 * h * slope_[i] + h01 * F_[i + 1] + h11 * h * slope_[i + 1], 0.0, 1.0);
}

double TWReference::quantile(double u) const {
  double lo = x_.front(), hi = x_.back();
  for (int it = 0; it < 100 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double TWReference::sample(Stream& s) const { return quantile(s.uniform()); }

double TWReference::mean() const {
  // E X = x_max - int F dx over the table range (mass outside is negligible)
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < x_.size(); ++i)
    integral += 0.5 * (F_[i] + F_[i + 1]) * (x_[i + 1] - x_[i]);
  return x_.back() - integral;
}

double TWReference::sd() const {
  double m1 = 0, m2 = 0;
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    const double p = F_[i + 1] - F_[i], xm = 0.5 * (x_[i] + x_[i + 1]);
    m1 += p * xm;
    m2 += p * xm * xm;
  }
  return std::sqrt(m2 - m1 * m1);
}

// ------------------------------------------------------------------ limit law

LimitLaw::LimitLaw(const TWReference& tw, double c, double step) : tw_(&tw), c_(c) {
  if (c < 0.0) throw InvalidParameter("limit-law coefficient must be nonnegative");
  if (c == 0.0) return;
  const auto& tx = tw.grid();
  const auto& tF = tw.values();
  h_ = step;
  x0_ = c * tx.front() - 9.0;
  const double x1 = c * tx.back() + 9.0;
  const std::size_t nx = static_cast<std::size_t>(std::ceil((x1 - x0_) / h_)) + 1;
  table_.resize(nx);
  for (std::size_t k = 0; k < nx; ++k) {
    const double x = x0_ + k * h_;
    double acc = tF.front() * normal_cdf(x - c * tx.front());
    for (std::size_t i = 0; i + 1 < tx.size(); ++i) {
      const double dF = tF[i + 1] - tF[i];
      if (dF != 0.0) acc += dF * normal_cdf(x - c * 0.5 * (tx[i] + tx[i + 1]));
    }
    table_[k] = acc;
  }
}

double LimitLaw::cdf(double x) const {
  if (c_ == 0.0) return normal_cdf(x);
  const double u = (x - x0_) / h_;
  if (u <= 0) return table_.front();
  const auto k = static_cast<std::size_t>(u);
  if (k + 1 >= table_.size()) return table_.back();
  const double t = u - k;
  return (1 - t) * table_[k] + t * table_[k + 1];
}

double LimitLaw::sample(Stream& s) const {
  const double z = s.normal();
  return c_ == 0.0 ? z : z + c_ * tw_->sample(s);
}

double LimitLaw::mean() const { return c_ * tw_->mean(); }
double LimitLaw::variance() const { return 1.0 + c_ * c_ * tw_->sd() * tw_->sd(); }

double limit_law_sample(const TWReference& tw, double b, double lambda, CoeffVariant v, Stream& s) {
  const double c = limit_coefficient(b, lambda, v);
  const double z = s.normal();
  return c == 0.0 ? z : z + c * tw.sample(s);
}

}  // namespace bssk
