#include "bssk/loe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "bssk/csv.hpp"
#include "bssk/errors.hpp"

extern "C" void dlasq1_(int* n, double* d, double* e, double* work, int* info);

namespace bssk {

EigenMethod eigen_method_from(const std::string& s) {
  if (s == "sturm") return EigenMethod::sturm;
  if (s == "dqds") return EigenMethod::dqds;
  throw InvalidParameter("unknown eigensolver: " + s);
}

void TridiagonalSample::validate() const {
  if (n < 1 || m < n) throw InvalidParameter("bad sample sizes");
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n - 1)
    throw InvalidParameter("bad bidiagonal lengths");
  for (double x : a)
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidParameter("a entries must be positive");
  for (double x : b)
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidParameter("b entries must be positive");
}

SymTridiag TridiagonalSample::matrix() const { return bottom_right(n); }

SymTridiag TridiagonalSample::bottom_right(int p) const {
  if (p < 1 || p > n) throw InvalidParameter("minor size out of range");
  const double im = 1.0 / m;
  const int s = n - p;  // 0-based first row
  std::vector<double> d(p), e(p - 1);
  for (int k = 0; k < p; ++k) {
    const int i = s + k;
    const double bb = i > 0 ? b[i - 1] * b[i - 1] : 0.0;
    d[k] = (a[i] * a[i] + bb) * im;
    if (k + 1 < p) e[k] = a[i] * b[i] * im;
  }
  return SymTridiag(std::move(d), std::move(e));
}

double TridiagonalSample::trace() const {
  double s = 0.0;
  for (double x : a) s += x * x;
  for (double x : b) s += x * x;
  return s / m;
}

double sample_chi(double dof, Stream& s) {
  if (!(dof > 0.0)) throw InvalidParameter("chi degrees of freedom must be positive");
  return s.chi(dof);
}

TridiagonalSample sample_loe(int n, int m, Stream& s) {
  if (n < 1 || m < n) throw InvalidParameter("need 1 <= n <= m");
  TridiagonalSample t;
  t.n = n;
  t.m = m;
  t.a.resize(n);
  t.b.resize(n - 1);
  for (int i = 1; i <= n; ++i) t.a[i - 1] = s.chi(m - n + i);
  for (int i = 1; i < n; ++i) t.b[i - 1] = s.chi(i);
  return t;
}

TridiagonalSample sample_loe(const ModelParams& p, Stream& s) {
  p.validate();
  return sample_loe(p.n, p.m, s);
}

namespace {
// Squared singular values of the bidiagonal B via LAPACK dqds.
std::vector<double> dqds_eigenvalues(const TridiagonalSample& t) {
  int n = t.n, info = 0;
  std::vector<double> d = t.a, e = t.b, work(4 * std::max(n, 1));
  e.resize(std::max(n, 1));
  dlasq1_(&n, d.data(), e.data(), work.data(), &info);
  if (info != 0) throw BracketFailure("dqds failed, info = " + std::to_string(info));
  for (double& x : d) x = x * x / t.m;
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}
}  // namespace

Spectrum eigenvalues(const TridiagonalSample& t, EigenMethod method) {
  t.validate();
  Spectrum s;
  s.mu = method == EigenMethod::dqds ? dqds_eigenvalues(t) : t.matrix().all_eigenvalues();
  return s;
}

TopEigenvector eigenvector_top(const TridiagonalSample& t) {
  const SymTridiag T = t.matrix();
  TopEigenvector out;
  out.mu1 = T.mu1();
  out.gap = T.mu1() - T.mu2();
  out.reliable = out.gap >= 1e-13;
  out.v = T.eigenvector(out.mu1);
  return out;
}

void write_spectrum_csv(const std::string& path, const Spectrum& s) {
  CsvWriter w(path, {"index", "mu"});
  for (int i = 0; i < s.size(); ++i) w.row(i + 1, s.mu[i]);
}

}  // namespace bssk
