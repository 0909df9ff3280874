#include "bssk/tridiag.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "bssk/errors.hpp"

namespace bssk {

namespace {

template <class T>
struct Kahan {
  T sum{}, c{};
  void add(T x) {
    const T y = x - c;
    const T t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

constexpr double kTiny = 1e-300;

template <class T>
T guard(T t) {
  if (std::abs(t) < kTiny) return T(kTiny);
  return t;
}

// Derivatives of sum_k log t_k(w), where t_k are the LDL pivots of (wI - T).
template <class T>
std::array<T, 3> pivot_log_derivs(const std::vector<double>& d, const std::vector<double>& e2, T w,
                                  int order) {
  Kahan<T> L1, L2, L3;
  T t = guard(w - d[0]), t1 = T(1), t2 = T(0), t3 = T(0);
  auto accumulate = [&] {
    const T u = t1 / t;
    L1.add(u);
    if (order >= 2) L2.add(t2 / t - u * u);
    if (order >= 3) L3.add(t3 / t - T(3) * u * t2 / t + T(2) * u * u * u);
  };
  accumulate();
  for (std::size_t k = 1; k < d.size(); ++k) {
    const T ip = T(1) / t, ip2 = ip * ip;
    const T n1 = T(1) + e2[k - 1] * t1 * ip2;
    T n2 = T(0), n3 = T(0);
    if (order >= 2) n2 = e2[k - 1] * (t2 * ip2 - T(2) * t1 * t1 * ip2 * ip);
    if (order >= 3)
      n3 = e2[k - 1] * (t3 * ip2 - T(6) * t1 * t2 * ip2 * ip + T(6) * t1 * t1 * t1 * ip2 * ip2);
    t = guard(w - d[k] - e2[k - 1] * ip);
    t1 = n1;
    t2 = n2;
    t3 = n3;
    accumulate();
  }
  return {L1.sum, L2.sum, L3.sum};
}

template <class T>
T inv_pow_from_derivs(const std::array<T, 3>& L, int k) {
  switch (k) {
    case 1: return L[0];
    case 2: return -L[1];
    case 3: return L[2] / T(2);
    default: throw InvalidParameter("power must be 1, 2 or 3");
  }
}

}  // namespace

double kahan_sum(const std::vector<double>& v) {
  Kahan<double> k;
  for (double x : v) k.add(x);
  return k.sum;
}

// ---------------------------------------------------------------- ListSpectrum

ListSpectrum::ListSpectrum(std::vector<double> mu) : mu_(std::move(mu)) {
  if (mu_.empty()) throw InvalidParameter("empty spectrum");
  for (double x : mu_)
    if (!std::isfinite(x)) throw InvalidParameter("non-finite eigenvalue");
  if (!std::is_sorted(mu_.begin(), mu_.end(), std::greater<>()))
    std::sort(mu_.begin(), mu_.end(), std::greater<>());
}

double ListSpectrum::sum_log_abs(double x) const {
  Kahan<double> s;
  for (double m : mu_) s.add(std::log(std::abs(x - m)));
  return s.sum;
}

double ListSpectrum::sum_inv_pow(double x, int k) const {
  Kahan<double> s;
  for (double m : mu_) s.add(std::pow(x - m, -k));
  return s.sum;
}

cplx ListSpectrum::sum_log(cplx w) const {
  Kahan<double> re, im;
  for (double m : mu_) {
    const cplx l = std::log(w - m);
    re.add(l.real());
    im.add(l.imag());
  }
  return {re.sum, im.sum};
}

cplx ListSpectrum::sum_inv_pow(cplx w, int k) const {
  Kahan<double> re, im;
  for (double m : mu_) {
    const cplx z = std::pow(w - m, -k);
    re.add(z.real());
    im.add(z.imag());
  }
  return {re.sum, im.sum};
}

double ListSpectrum::sum_log_gap_top() const {
  Kahan<double> s;
  for (std::size_t j = 1; j < mu_.size(); ++j) s.add(std::log(mu_[0] - mu_[j]));
  return s.sum;
}

int ListSpectrum::count_at_least(double x) const {
  // mu_ is descending
  auto it = std::partition_point(mu_.begin(), mu_.end(), [x](double m) { return m >= x; });
  return static_cast<int>(it - mu_.begin());
}

// ------------------------------------------------------------------ SymTridiag

SymTridiag::SymTridiag(std::vector<double> d, std::vector<double> e)
    : d_(std::move(d)), e_(std::move(e)) {
  if (d_.empty()) throw InvalidParameter("empty tridiagonal");
  if (e_.size() + 1 != d_.size()) throw InvalidParameter("off-diagonal size mismatch");
  e2_.resize(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) e2_[i] = e_[i] * e_[i];
  for (double x : d_)
    if (!std::isfinite(x)) throw BracketFailure("non-finite diagonal entry");
  for (double x : e_)
    if (!std::isfinite(x)) throw BracketFailure("non-finite off-diagonal entry");
}

int SymTridiag::count_below(double x) const {
  int c = 0;
  double t = d_[0] - x;
  if (t < 0) ++c;
  for (std::size_t k = 1; k < d_.size(); ++k) {
    if (t == 0.0) t = -kTiny;
    t = d_[k] - x - e2_[k - 1] / t;
    if (t < 0) ++c;
  }
  return c;
}

std::pair<double, double> SymTridiag::bounds() const {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  const std::size_t n = d_.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(e_[i - 1]);
    if (i + 1 < n) r += std::abs(e_[i]);
    lo = std::min(lo, d_[i] - r);
    hi = std::max(hi, d_[i] + r);
  }
  const double pad = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  return {lo - pad, hi + pad};
}

double SymTridiag::kth_largest(int k, double tol) const {
  const int n = size();
  if (k < 1 || k > n) throw InvalidParameter("eigenvalue index out of range");
  auto [lo, hi] = bounds();
  const int target = n - k + 1;  // need count_below(x) >= target for x above it
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(mid) >= target)
      hi = mid;
    else
      lo = mid;
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw BracketFailure("bisection failed");
  return 0.5 * (lo + hi);
}

std::vector<double> SymTridiag::top_k(int k, double tol) const {
  std::vector<double> out(k);
  for (int i = 0; i < k; ++i) out[i] = kth_largest(i + 1, tol);
  return out;
}

std::vector<double> SymTridiag::all_eigenvalues(double tol) const {
  const int n = size();
  std::vector<double> asc(n, std::numeric_limits<double>::quiet_NaN());
  auto [lo, hi] = bounds();
  struct Job { double lo, hi; int clo, chi; };
  std::vector<Job> stack{{lo, hi, count_below(lo), count_below(hi)}};
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    if (j.chi == j.clo) continue;
    const double mid = 0.5 * (j.lo + j.hi);
    if (j.hi - j.lo <= tol || mid <= j.lo || mid >= j.hi) {
      for (int i = j.clo; i < j.chi; ++i) asc[i] = mid;
      continue;
    }
    const int cm = count_below(mid);
    stack.push_back({j.lo, mid, j.clo, cm});
    stack.push_back({mid, j.hi, cm, j.chi});
  }
  for (double x : asc)
    if (!std::isfinite(x)) throw BracketFailure("bisection did not isolate all roots");
  std::reverse(asc.begin(), asc.end());
  return asc;
}

void SymTridiag::ensure_top() const {
  if (have_top_) return;
  mu1_cache_ = kth_largest(1);
  mu2_cache_ = size() > 1 ? kth_largest(2) : mu1_cache_;
  have_top_ = true;
}

double SymTridiag::mu1() const {
  ensure_top();
  return mu1_cache_;
}

double SymTridiag::mu2() const {
  ensure_top();
  return mu2_cache_;
}

double SymTridiag::sum_log_abs(double x) const {
  Kahan<double> s;
  double t = guard(x - d_[0]);
  s.add(std::log(std::abs(t)));
  for (std::size_t k = 1; k < d_.size(); ++k) {
    t = guard(x - d_[k] - e2_[k - 1] / t);
    s.add(std::log(std::abs(t)));
  }
  return s.sum;
}

double SymTridiag::sum_inv_pow(double x, int k) const {
  return inv_pow_from_derivs(pivot_log_derivs<double>(d_, e2_, x, k), k);
}

cplx SymTridiag::sum_log(cplx w) const {
  // Pivots of (wI - T) stay in the upper half plane when Im w > 0, and the
  // sum of their arguments equals the sum of arg(w - mu_i).
  if (w.imag() < 0.0) return std::conj(sum_log(std::conj(w)));
  Kahan<double> re, im;
  cplx t = guard(w - d_[0]);
  auto add = [&](cplx z) {
    re.add(std::log(std::abs(z)));
    im.add(std::arg(z));
  };
  add(t);
  for (std::size_t k = 1; k < d_.size(); ++k) {
    t = guard(w - d_[k] - e2_[k - 1] / t);
    add(t);
  }
  return {re.sum, im.sum};
}

cplx SymTridiag::sum_inv_pow(cplx w, int k) const {
  if (w.imag() < 0.0) return std::conj(sum_inv_pow(std::conj(w), k));
  return inv_pow_from_derivs(pivot_log_derivs<cplx>(d_, e2_, w, k), k);
}

double SymTridiag::sum_log_gap_top() const {
  // log|p'(mu_1)| with p(x) = det(xI - T) = prod t_k:
  // p' = prod_{k<n} t_k * (t_n' + t_n * sum_{k<n} t_k'/t_k).
  const double x = mu1();
  const std::size_t n = d_.size();
  if (n == 1) return 0.0;
  Kahan<double> logs, ratio;
  double t = guard(x - d_[0]), t1 = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    logs.add(std::log(std::abs(t)));
    ratio.add(t1 / t);
    const double ip = 1.0 / t;
    const double n1 = 1.0 + e2_[k - 1] * t1 * ip * ip;
    t = guard(x - d_[k] - e2_[k - 1] * ip);
    t1 = n1;
  }
  return logs.sum + std::log(std::abs(t1 + t * ratio.sum));
}

std::vector<double> SymTridiag::eigenvector(double mu) const {
  const std::size_t n = d_.size();
  std::vector<double> v(n, 0.0);
  if (n == 1) {
    v[0] = 1.0;
    return v;
  }
  std::vector<double> tp(n), sm(n);
  tp[0] = guard(d_[0] - mu);
  for (std::size_t k = 1; k < n; ++k) tp[k] = guard(d_[k] - mu - e2_[k - 1] / tp[k - 1]);
  sm[n - 1] = guard(d_[n - 1] - mu);
  for (std::size_t k = n - 1; k-- > 0;) sm[k] = guard(d_[k] - mu - e2_[k] / sm[k + 1]);
  std::size_t r = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double g = std::abs(tp[k] + sm[k] - (d_[k] - mu));
    if (g < best) {
      best = g;
      r = k;
    }
  }
  v[r] = 1.0;
  for (std::size_t j = r; j-- > 0;) v[j] = -(e_[j] / tp[j]) * v[j + 1];
  for (std::size_t j = r + 1; j < n; ++j) v[j] = -(e_[j - 1] / sm[j]) * v[j - 1];
  double nrm = 0.0;
  for (double x : v) nrm += x * x;
  nrm = std::sqrt(nrm);
  double sign = 1.0;
  for (double x : v)
    if (x != 0.0) {
      sign = x > 0 ? 1.0 : -1.0;
      break;
    }
  for (double& x : v) x *= sign / nrm;
  return v;
}

}  // namespace bssk
