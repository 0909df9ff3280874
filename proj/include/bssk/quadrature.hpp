#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "bssk/critical_point.hpp"
#include "bssk/model.hpp"
#include "bssk/rng.hpp"

namespace bssk {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  int max_depth = 14;        // bisection levels per panel
  double omega_Y = 120.0;    // truncation point: omega * Y
  double min_Y_scales = 40;  // and Y at least this many singularity distances
};

struct LineResult {
  cplx value;
  double error = 0;
  long evaluations = 0;
};

// int_R f(y) dy for f(y) = e^{i omega y} g(y), g smooth with algebraic decay.
// tail(Y, s) returns the integral over s*y > Y.
struct LineProblem {
  std::function<cplx(double)> f;
  std::function<cplx(double, int)> tail;
  double omega;
  double center = 0;  // location of the nearest singularity along the line
  double scale;       // its distance from the line
  double Y;
};

LineResult integrate_line(const LineProblem& p, const QuadratureConfig& cfg);
double default_truncation(double omega, double scale, double center, const QuadratureConfig& cfg);

struct QnResult {
  double log_Q;        // log Re Q_n
  double im_over_re;   // |Im Q|/|Re Q|
  double rel_error;    // estimated
  long evaluations;
};

// Q_n = int int e^{n G(c1 + i y1, c2 + i y2)} dy1 dy2 along vertical lines.
QnResult qn_quadrature(const SaddleFunctions& f, double c1, double c2, const QuadratureConfig& cfg = {});

// Inner integral over y2 for fixed z1, scaled by e^{-n G0}.
LineResult qn_inner(const SaddleFunctions& f, cplx z1, double c2, double G0, const QuadratureConfig& cfg);

// log of 2^n/(|S^{m-1}||S^{n-1}|) (pi^2 (n+m)/(m^2 n beta^2))^{(n+m-4)/4}.
double log_contour_prefactor(int n, int m, double beta);

// Dense Gaussian coupling matrix, row-major n x m.
struct Coupling {
  int n, m;
  std::vector<double> J;
  double operator()(int i, int j) const { return J[static_cast<std::size_t>(i) * m + j]; }
  static Coupling sample(int n, int m, Stream& s);
  std::vector<double> spectrum() const;  // eigenvalues of J J^T/m, descending (n = 2 only)
};

// log Z for n = 2: tau integrated through I_{m/2-1}, then the trapezoid rule in the sigma angle.
double z_direct(const Coupling& J, double beta, double abs_tol = 1e-12);

struct McEstimate {
  double log_Z, std_error;  // std_error is on log Z (delta method)
};
McEstimate z_direct_mc(const Coupling& J, double beta, long samples, std::uint64_t seed);

struct ContourCheck {
  double log_Z_direct, log_Z_contour, rel_error, log_Q;
};
ContourCheck contour_identity_check(const Coupling& J, double beta, const QuadratureConfig& cfg = {});

// K_n on the line z1 = mu_1^(1), z2 = mu_1^(2) + 1/n + i y, normalised by e^{-n G_hat}.
struct KnResult {
  double K, im_over_re, rel_error;
  double I11;  // full-line Gaussian factor sqrt(pi/(c1 n)) exp(-c2^2/(4 c1 n))
};
KnResult kn_quadrature(const SaddleFunctions& f, const QuadratureConfig& cfg = {});

}  // namespace bssk
