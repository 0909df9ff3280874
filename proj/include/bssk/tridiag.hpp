#pragma once

#include <complex>
#include <vector>

namespace bssk {

using cplx = std::complex<double>;

// Sums over the eigenvalues mu_1 >= ... >= mu_n of a symmetric matrix,
// evaluated either from an explicit list or in O(n) from a tridiagonal form.
class SpectralView {
 public:
  virtual ~SpectralView() = default;
  virtual int size() const = 0;
  virtual double mu1() const = 0;
  virtual double mu2() const = 0;
  // sum_i log|x - mu_i|
  virtual double sum_log_abs(double x) const = 0;
  // sum_i (x - mu_i)^{-k}, k = 1..3
  virtual double sum_inv_pow(double x, int k) const = 0;
  // sum_i Log(w - mu_i), principal branch per term
  virtual cplx sum_log(cplx w) const = 0;
  virtual cplx sum_inv_pow(cplx w, int k) const = 0;
  // sum_{j >= 2} log(mu_1 - mu_j)
  virtual double sum_log_gap_top() const = 0;
  // #{i : mu_i >= x}
  virtual int count_at_least(double x) const = 0;
};

double kahan_sum(const std::vector<double>& v);

class ListSpectrum final : public SpectralView {
 public:
  explicit ListSpectrum(std::vector<double> mu_desc);
  int size() const override { return static_cast<int>(mu_.size()); }
  double mu1() const override { return mu_[0]; }
  double mu2() const override { return mu_.size() > 1 ? mu_[1] : mu_[0]; }
  double sum_log_abs(double x) const override;
  double sum_inv_pow(double x, int k) const override;
  cplx sum_log(cplx w) const override;
  cplx sum_inv_pow(cplx w, int k) const override;
  double sum_log_gap_top() const override;
  int count_at_least(double x) const override;
  const std::vector<double>& mu() const { return mu_; }

 private:
  std::vector<double> mu_;
};

// Symmetric tridiagonal matrix with diagonal d (size n) and off-diagonal e (size n-1).
class SymTridiag final : public SpectralView {
 public:
  SymTridiag(std::vector<double> d, std::vector<double> e);

  int size() const override { return static_cast<int>(d_.size()); }
  const std::vector<double>& diag() const { return d_; }
  const std::vector<double>& off() const { return e_; }

  // Number of eigenvalues strictly below x (Sturm count).
  int count_below(double x) const;
  int count_at_least(double x) const override { return size() - count_below(x); }
  // Gershgorin interval.
  std::pair<double, double> bounds() const;
  // k-th largest eigenvalue (k = 1 is the top) by bisection to tol, then Newton polish.
  double kth_largest(int k, double tol = 1e-13) const;
  std::vector<double> top_k(int k, double tol = 1e-13) const;
  // All eigenvalues, descending, by recursive bisection with shared counts.
  std::vector<double> all_eigenvalues(double tol = 1e-13) const;

  double mu1() const override;
  double mu2() const override;
  double sum_log_abs(double x) const override;
  double sum_inv_pow(double x, int k) const override;
  cplx sum_log(cplx w) const override;
  cplx sum_inv_pow(cplx w, int k) const override;
  double sum_log_gap_top() const override;

  // Unit eigenvector for an isolated eigenvalue via a twisted factorization;
  // sign fixed so the first nonzero entry is positive.
  std::vector<double> eigenvector(double mu) const;

 private:
  std::vector<double> d_, e_, e2_;
  mutable double mu1_cache_ = 0.0, mu2_cache_ = 0.0;
  mutable bool have_top_ = false;
  void ensure_top() const;
};

}  // namespace bssk
