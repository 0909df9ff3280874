#include "bssk/recurrences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bssk/edge_stats.hpp"
#include "bssk/errors.hpp"
#include "bssk/model.hpp"
#include "bssk/parallel.hpp"

namespace bssk {

void characteristic_roots(int n, int m, double gamma, int i, double& rho_plus, double& rho_minus) {
  const double c = gamma * m - (m - n + 2.0 * i - 1);
  const double prod = (m - n + i - 1.0) * (i - 1.0);
  const double disc = c * c - 4 * prod;
  if (disc < 0 || c <= 0) throw NegativeDiscriminant("negative discriminant at i = " + std::to_string(i));
  rho_plus = -0.5 * (c + std::sqrt(disc));
  rho_minus = prod / rho_plus;  // avoids cancellation
}

double RecurrenceState::sum_L() const {
  double s = 0;
  for (int i = 3; i <= n; ++i) s += L[i];
  return s;
}

double RecurrenceState::alpha_remainder() const {
  double s = 0;
  for (int i = 2; i <= n; ++i) s += alpha[i];
  return s - suffix_weights[3] * alpha[2];
}

RecurrenceState build_recurrence(const TridiagonalSample& t, double sigma) {
  t.validate();
  const int n = t.n, m = t.m;
  if (n < 3) throw InvalidParameter("recurrence needs n >= 3");
  const double lam = static_cast<double>(n) / m;
  RecurrenceState s;
  s.n = n;
  s.m = m;
  s.sigma = sigma;
  s.gamma = d_plus(lam) + sigma * std::pow(static_cast<double>(n), -2.0 / 3.0);
  auto arr = [&](int extra = 1) { return std::vector<double>(n + extra, 0.0); };
  s.rho_plus = arr(), s.rho_minus = arr(), s.alpha = arr(), s.beta = arr();
  s.tau = arr(), s.delta = arr(), s.xi = arr(), s.omega = arr(), s.L = arr(), s.X = arr();
  s.suffix_weights = arr(2);
  for (int i = 1; i <= n; ++i) {
    characteristic_roots(n, m, s.gamma, i, s.rho_plus[i], s.rho_minus[i]);
    const double rp = -s.rho_plus[i];
    const double a2 = t.a[i - 1] * t.a[i - 1];
    s.alpha[i] = (a2 - (m - n + i)) / rp;
    if (i >= 2) {
      const double b2 = t.b[i - 2] * t.b[i - 2];
      s.beta[i] = (b2 - (i - 1)) / rp;
    }
    s.tau[i] = (m - n + i) / rp;
    s.delta[i] = (i - 1) / rp;
  }
  for (int i = 2; i <= n; ++i) {
    s.omega[i] = s.tau[i - 1] * s.delta[i];
    s.xi[i] = s.alpha[i] + s.beta[i] * (1 + s.tau[i - 1]) + s.alpha[i - 1] * s.delta[i];
  }
  for (int i = 3; i <= n; ++i) {
    s.L[i] = s.xi[i] + (i > 3 ? s.omega[i] * s.L[i - 1] : 0.0);
    s.X[i] = (1 + s.tau[i - 1]) * (s.delta[i] * s.alpha[i - 1] + s.beta[i]);
  }
  s.suffix_weights[n + 1] = 1.0;
  for (int i = n; i >= 2; --i) s.suffix_weights[i] = 1 + s.omega[i] * s.suffix_weights[i + 1];
  return s;
}

TruncatedZ truncated_Z(const RecurrenceState& s, int p) {
  if (p < 0 || s.n - p < 3) throw InvalidParameter("truncation needs 3 <= n - p");
  TruncatedZ z;
  for (int i = 3; i <= s.n; ++i) (i <= s.n - p ? z.Z : z.tail) += s.suffix_weights[i + 1] * s.X[i];
  z.remainder = s.alpha_remainder();
  return z;
}

double logsum_consistency(const SpectralView& sp, const RecurrenceState& s) {
  const double n = s.n, lam = n / s.m, ln = std::log(n);
  const double v = sp.sum_log_abs(s.gamma) - C_lambda(lam) * n + s.sum_L() + ln / 6 -
                   edge_C1(lam) * s.sigma * std::cbrt(n) + edge_C2(lam) * std::pow(s.sigma, 1.5);
  return v / std::sqrt(ln);
}

EigvecRecurrence eigvec_recurrence(const TridiagonalSample& t, double mu1) {
  t.validate();
  const int n = t.n, m = t.m;
  const double dp = d_plus(static_cast<double>(n) / m);
  EigvecRecurrence r;
  r.F.resize(n - 1);
  r.log_ratio.resize(n - 1);
  r.sign.resize(n - 1);
  double rp_prev = 0, onep_prev = 0;
  for (int j = 1; j <= n - 1; ++j) {
    double rp, rm;
    characteristic_roots(n, m, dp, j, rp, rm);
    rp = -rp;
    const double a2 = t.a[j - 1] * t.a[j - 1];
    double onep = (mu1 * m - a2) / rp;
    if (j >= 2) {
      const double b2 = t.b[j - 2] * t.b[j - 2];
      if (std::abs(onep_prev) < 1e-300) throw Breakdown("1 + F_j underflow at j = " + std::to_string(j - 1));
      const double ab = t.a[j - 2] * t.b[j - 2];
      onep = (mu1 * m - a2 - b2) / rp - ab * ab / (rp * rp_prev) / onep_prev;
    }
    r.F[j - 1] = onep - 1;
    if (onep == 0) r.flagged = true;
    // v_{j+1}/v_j = (1 + F_j)|rho_j^+|/(a_j b_j)
    const double ratio = onep * rp / (t.a[j - 1] * t.b[j - 1]);
    r.log_ratio[j - 1] = std::log(std::abs(ratio));
    r.sign[j - 1] = ratio < 0 ? -1 : 1;
    rp_prev = rp;
    onep_prev = onep;
  }
  return r;
}

namespace {
void log_profile(const EigvecRecurrence& r, std::vector<double>& logv, std::vector<int>& sg, double& log_norm) {
  const std::size_t n = r.log_ratio.size() + 1;
  logv.assign(n, 0.0);
  sg.assign(n, 1);
  for (std::size_t j = 1; j < n; ++j) {
    logv[j] = logv[j - 1] + r.log_ratio[j - 1];
    sg[j] = sg[j - 1] * r.sign[j - 1];
  }
  const double mx = *std::max_element(logv.begin(), logv.end());
  double acc = 0;
  for (double x : logv) acc += std::exp(2 * (x - mx));
  log_norm = mx + 0.5 * std::log(acc);
}
}  // namespace

std::vector<double> reconstruct_eigenvector(const EigvecRecurrence& r) {
  std::vector<double> logv;
  std::vector<int> sg;
  double ln;
  log_profile(r, logv, sg, ln);
  std::vector<double> v(logv.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = sg[j] * std::exp(logv[j] - ln);
  return v;
}

std::vector<double> decay_curve(const EigvecRecurrence& r) {
  std::vector<double> logv;
  std::vector<int> sg;
  double ln;
  log_profile(r, logv, sg, ln);
  for (double& x : logv) x = (x - ln) / std::log(10.0);
  return logv;
}

MinorTop minor_top_eigenvalue(const TridiagonalSample& t, int p) {
  const double lam = static_cast<double>(t.n) / t.m;
  MinorTop r;
  r.mu_tilde1 = t.bottom_right(p).mu1();
  r.Y_n = edge_rescale(r.mu_tilde1, t.n, lam);
  return r;
}

int ab_cutoff(int n, double fallback_fraction) {
  const double c = n - std::cbrt(static_cast<double>(n)) * std::pow(std::log(static_cast<double>(n)), 3);
  if (c >= 1) return static_cast<int>(std::floor(c));
  return std::max(1, static_cast<int>(std::floor(fallback_fraction * n)));
}

AbConcentration ab_concentration(const TridiagonalSample& t, int cutoff) {
  t.validate();
  const int n = t.n, m = t.m;
  AbConcentration r;
  r.cutoff = cutoff > 0 ? std::min(cutoff, n - 1) : std::min(ab_cutoff(n), n - 1);
  for (int j = 1; j <= r.cutoff; ++j) {
    const double ab = t.a[j - 1] * t.b[j - 1];
    r.max_ab = std::max(r.max_ab, ab);
    r.worst_centered = std::max(r.worst_centered, std::abs(ab - std::sqrt(static_cast<double>(j) * (m - n + j))));
  }
  const double ln = std::log(static_cast<double>(n));
  r.lemma_deviation = std::abs(r.max_ab - std::sqrt(static_cast<double>(m) * n));
  r.lemma_threshold = (M_E * ln) * (M_E * ln) * std::sqrt(static_cast<double>(n));
  r.lemma_holds = r.lemma_deviation <= r.lemma_threshold;
  return r;
}

IndependenceReport independence_experiment(int n, int m, double sigma, int p, int samples, std::uint64_t seed,
                                           int workers, int bootstrap) {
  if (p < 1 || n - p < 3) throw InvalidParameter("independence experiment needs 1 <= p <= n - 3");
  if (samples < 3) throw InvalidParameter("need at least three samples");
  const double scale = std::sqrt(2.0 / 3.0 * std::log(static_cast<double>(n)));
  IndependenceReport rep;
  rep.rows.resize(samples);
  parallel_for(samples, workers, [&](std::size_t k) {
    Stream st(seed, k);
    const auto t = sample_loe(n, m, st);
    const auto s = build_recurrence(t, sigma);
    auto& row = rep.rows[k];
    row.Z_stat = truncated_Z(s, p).Z / scale;
    row.Y_n = minor_top_eigenvalue(t, p).Y_n;
    row.full_L_stat = s.sum_L() / scale;
    row.T2n = edge_rescale(t.matrix().mu1(), n, static_cast<double>(n) / m);
  });
  std::vector<double> z, y, l, t2;
  for (const auto& r : rep.rows) {
    z.push_back(r.Z_stat);
    y.push_back(r.Y_n);
    l.push_back(r.full_L_stat);
    t2.push_back(r.T2n);
  }
  rep.split = correlation_with_ci(z, y, bootstrap, seed ^ 0x5a5a);
  rep.full = correlation_with_ci(l, t2, bootstrap, seed ^ 0xa5a5);
  return rep;
}

}  // namespace bssk
