#pragma once

#include <string>
#include <vector>

#include "bssk/model.hpp"
#include "bssk/rng.hpp"
#include "bssk/tridiag.hpp"

namespace bssk {

// Bidiagonal factor of the tridiagonal LOE model: a_i ~ chi(m-n+i), b_i ~ chi(i).
struct TridiagonalSample {
  int n = 0, m = 0;
  std::vector<double> a;  // size n
  std::vector<double> b;  // size n-1

  void validate() const;
  // (1/m) B B^T as a symmetric tridiagonal.
  SymTridiag matrix() const;
  // Bottom-right p x p block of (1/m) B B^T; its first diagonal entry keeps b_{n-p}^2.
  SymTridiag bottom_right(int p) const;
  double trace() const;  // (sum a^2 + sum b^2)/m
};

struct Spectrum {
  std::vector<double> mu;  // descending
  int size() const { return static_cast<int>(mu.size()); }
};

enum class EigenMethod { sturm, dqds };
EigenMethod eigen_method_from(const std::string& s);

double sample_chi(double dof, Stream& s);
TridiagonalSample sample_loe(int n, int m, Stream& s);
TridiagonalSample sample_loe(const ModelParams& p, Stream& s);

Spectrum eigenvalues(const TridiagonalSample& t, EigenMethod method = EigenMethod::sturm);

struct TopEigenvector {
  double mu1 = 0.0;
  double gap = 0.0;
  bool reliable = true;  // false when mu1 - mu2 < 1e-13
  std::vector<double> v;
};
TopEigenvector eigenvector_top(const TridiagonalSample& t);

void write_spectrum_csv(const std::string& path, const Spectrum& s);

}  // namespace bssk
