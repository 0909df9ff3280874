#include "bssk/quadrature.hpp"

#include <algorithm>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>

#include "bssk/errors.hpp"

namespace bssk {

namespace {

// QUADPACK 15-point Kronrod rule with its embedded 7-point Gauss rule.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  cplx K, G;
};

Panel gk15(const std::function<cplx(double)>& f, double a, double b, long& evals) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx K = kWgk[7] * fc, G = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const cplx s = f(c - h * kXgk[j]) + f(c + h * kXgk[j]);
    K += kWgk[j] * s;
    if (j % 2 == 1) G += kWg[j / 2] * s;
  }
  evals += 15;
  return {a, b, K * h, G * h};
}

cplx refine(const std::function<cplx(double)>& f, const Panel& p, double abs_tol, int depth, double& err,
            long& evals) {
  const double e = std::abs(p.K - p.G);
  if (e <= abs_tol || depth <= 0) {
    err += e;
    return p.K;
  }
  const double m = 0.5 * (p.a + p.b);
  return refine(f, gk15(f, p.a, m, evals), 0.5 * abs_tol, depth - 1, err, evals) +
         refine(f, gk15(f, m, p.b, evals), 0.5 * abs_tol, depth - 1, err, evals);
}

std::vector<double> breakpoints(double center, double scale, double half_period, double Y) {
  center = std::clamp(center, -0.5 * Y, 0.5 * Y);
  const double h0 = std::min(scale, half_period) / 4;
  std::vector<double> right{center}, left;
  for (double x = center, h = h0; x < Y;) {
    x = std::min(x + h, Y);
    right.push_back(x);
    h = std::min(2 * h, half_period);
  }
  for (double x = center, h = h0; x > -Y;) {
    x = std::max(x - h, -Y);
    left.push_back(x);
    h = std::min(2 * h, half_period);
  }
  std::reverse(left.begin(), left.end());
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

}  // namespace

double default_truncation(double omega, double scale, double center, const QuadratureConfig& cfg) {
  return std::max({cfg.omega_Y / omega, cfg.min_Y_scales * scale + 2 * std::abs(center), 1e-300});
}

LineResult integrate_line(const LineProblem& p, const QuadratureConfig& cfg) {
  if (!(p.omega > 0) || !(p.scale > 0) || !(p.Y > 0)) throw InvalidParameter("line problem needs positive omega, scale, Y");
  const double hp = M_PI / p.omega;
  LineResult r;
  double Y = p.Y;
  for (int attempt = 0;; ++attempt) {
    const auto bp = breakpoints(p.center, p.scale, hp, Y);
    std::vector<Panel> panels;
    panels.reserve(bp.size());
    cplx coarse = 0;
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
      panels.push_back(gk15(p.f, bp[k], bp[k + 1], r.evaluations));
      coarse += panels.back().K;
    }
    const cplx tail = p.tail(Y, +1) + p.tail(Y, -1);
    const double mag = std::max(std::abs(coarse + tail), 1e-300);
    // tail check: the asymptotic tail at Y against two more half periods plus the tail beyond
    double tail_err = 0;
    for (int side : {+1, -1}) {
      const double a = side > 0 ? Y : -Y - 2 * hp, b = a + 2 * hp;
      const cplx ext = gk15(p.f, a, a + hp, r.evaluations).K + gk15(p.f, a + hp, b, r.evaluations).K;
      tail_err += std::abs(p.tail(Y, side) - ext - p.tail(Y + 2 * hp, side));
    }
    if (tail_err > 0.25 * cfg.rel_tol * mag && attempt < 4) {
      Y *= 2;
      continue;
    }
    const double panel_tol = cfg.rel_tol * mag / 8;
    cplx total = 0;
    double err = 0;
    for (const auto& pn : panels) total += refine(p.f, pn, panel_tol, cfg.max_depth, err, r.evaluations);
    r.value = total + tail;
    r.error = err + tail_err;
    return r;
  }
}

// ------------------------------------------------------------------ Q_n

namespace {

// sum_{k=0}^{3} (-1)^{k+1} g^{(k)}(Y)/(i w)^{k+1} e^{i w Y} for the upper tail;
// ratios[k] = g^{(k)}/g, fY = e^{i w Y} g(Y).
cplx ibp_tail(cplx fY, const cplx* ratios, int terms, double omega, int side) {
  const cplx iw(0.0, omega);
  cplx acc = 0, pw = iw;
  for (int k = 0; k < terms; ++k) {
    const double sgn = side > 0 ? ((k % 2 == 0) ? -1.0 : 1.0) : ((k % 2 == 0) ? 1.0 : -1.0);
    acc += sgn * ratios[k] / pw;
    pw *= iw;
  }
  return fY * acc;
}

}  // namespace

LineResult qn_inner(const SaddleFunctions& f, cplx z1, double c2, double G0, const QuadratureConfig& cfg) {
  const int n = f.n();
  const double omega = n * f.B_n;
  const double mu1 = f.spectrum->mu1();
  const cplx branch = mu1 / (4.0 * z1);
  const double scale = c2 - branch.real();
  if (!(scale > 0)) throw InvalidParameter("center not admissible: 4 c1 c2 must exceed mu_1");
  LineProblem p;
  p.f = [&, z1](double y) { return std::exp(static_cast<double>(n) * (eval_G(f, z1, cplx(c2, y)) - G0)); };
  p.tail = [&, z1](double Y, int side) {
    const cplx z2(c2, side * Y);
    const cplx w = 4.0 * z1 * z2;
    const cplx T1 = f.spectrum->sum_inv_pow(w, 1), T2 = f.spectrum->sum_inv_pow(w, 2),
               T3 = f.spectrum->sum_inv_pow(w, 3);
    const cplx psi = -2.0 * z1 * T1, psi1 = 8.0 * z1 * z1 * T2, psi2 = -64.0 * z1 * z1 * z1 * T3;
    const cplx I(0, 1);
    const cplx ratios[4] = {1.0, I * psi, -(psi1 + psi * psi), -I * (psi2 + 3.0 * psi * psi1 + psi * psi * psi)};
    return ibp_tail(p.f(side * Y), ratios, 4, omega, side);
  };
  p.omega = omega;
  p.center = branch.imag();
  p.scale = scale;
  p.Y = default_truncation(omega, scale, p.center, cfg);
  return integrate_line(p, cfg);
}

QnResult qn_quadrature(const SaddleFunctions& f, double c1, double c2, const QuadratureConfig& cfg) {
  const int n = f.n();
  const double mu1 = f.spectrum->mu1();
  if (!(c1 > 0 && c2 > 0 && 4 * c1 * c2 > mu1)) throw InvalidParameter("center must satisfy 4 c1 c2 > mu_1");
  const double m_eff = n + 2.0 * n * f.alpha_n;  // = m
  if (m_eff < 4.0 - 1e-12) throw TailTooFat("z1-axis decay |y|^{-m/2} needs m >= 4");
  const double G0 = eval_G(f, c1, c2).real();
  const double omega = n * f.B_n;
  long evals = 0;
  // inner values must be quieter than the outer tolerance or the outer refinement chases noise
  QuadratureConfig inner_cfg = cfg;
  inner_cfg.rel_tol = cfg.rel_tol * 1e-2;
  QuadratureConfig outer_cfg = cfg;
  outer_cfg.max_depth = std::min(cfg.max_depth, 6);
  auto Phi = [&](double y1) {
    const auto r = qn_inner(f, cplx(c1, y1), c2, G0, inner_cfg);
    evals += r.evaluations;
    return r.value;
  };
  LineProblem p;
  p.f = Phi;
  p.omega = omega;
  p.center = 0;
  p.scale = std::min((4 * c1 * c2 - mu1) / (4 * c2), c1);
  p.Y = default_truncation(omega, p.scale, 0, cfg);
  p.tail = [&](double Y, int side) {
    // derivatives of g = Phi e^{-i w y} by central differences
    const double h = 0.05 * Y, y = side * Y;
    auto g = [&](double t) { return Phi(t) * std::exp(cplx(0, -omega * t)); };
    const cplx gm = g(y - h), g0 = g(y), gp = g(y + h);
    const cplx d1 = (gp - gm) / (2 * h), d2 = (gp - 2.0 * g0 + gm) / (h * h);
    const cplx ratios[3] = {1.0, d1 / g0, d2 / g0};
    return ibp_tail(g0 * std::exp(cplx(0, omega * y)), ratios, 3, omega, side);
  };
  const auto r = integrate_line(p, outer_cfg);
  QnResult q;
  if (!(r.value.real() > 0)) throw ToleranceNotMet("Q_n quadrature returned a nonpositive real part");
  q.log_Q = n * G0 + std::log(r.value.real());
  q.im_over_re = std::abs(r.value.imag()) / r.value.real();
  q.rel_error = r.error / r.value.real();
  q.evaluations = evals;
  return q;
}

double log_contour_prefactor(int n, int m, double beta) {
  const double N = n, M = m;
  auto log_area = [](double k) { return std::log(2.0) + 0.5 * k * std::log(M_PI) - std::lgamma(0.5 * k); };
  return N * std::log(2.0) - log_area(M) - log_area(N) +
         (N + M - 4) / 4 * std::log(M_PI * M_PI * (N + M) / (M * M * N * beta * beta));
}

// ------------------------------------------------------------------ direct Z

Coupling Coupling::sample(int n, int m, Stream& s) {
  Coupling c{n, m, std::vector<double>(static_cast<std::size_t>(n) * m)};
  for (auto& x : c.J) x = s.normal();
  return c;
}

std::vector<double> Coupling::spectrum() const {
  if (n != 2) throw InvalidParameter("closed-form spectrum only for n = 2");
  double a = 0, b = 0, c = 0;
  for (int j = 0; j < m; ++j) {
    a += (*this)(0, j) * (*this)(0, j);
    b += (*this)(0, j) * (*this)(1, j);
    c += (*this)(1, j) * (*this)(1, j);
  }
  a /= m, b /= m, c /= m;
  const double tr = a + c, disc = std::hypot(a - c, 2 * b);
  const double top = 0.5 * (tr + disc);
  return {top, (a * c - b * b) / top};
}

namespace {

// log E_tau exp(x . tau) over the radius-sqrt(m) sphere, r = sqrt(m)|x|.
double log_sphere_mgf(double r, int m) {
  const double nu = 0.5 * m - 1.0;
  if (r < 1e-6) return r * r / (4 * (nu + 1));
  return std::lgamma(0.5 * m) + nu * std::log(2.0 / r) + std::log(boost::math::cyl_bessel_i(nu, r));
}

}  // namespace

double z_direct(const Coupling& J, double beta, double abs_tol) {
  if (J.n != 2) throw InvalidParameter("deterministic direct path needs n = 2");
  const double scale = beta / std::sqrt(static_cast<double>(J.n + J.m));
  auto log_f = [&](double th) {
    const double s1 = std::sqrt(2.0) * std::cos(th), s2 = std::sqrt(2.0) * std::sin(th);
    double norm2 = 0;
    for (int j = 0; j < J.m; ++j) {
      const double x = scale * (s1 * J(0, j) + s2 * J(1, j));
      norm2 += x * x;
    }
    return log_sphere_mgf(std::sqrt(J.m * norm2), J.m);
  };
  auto trapezoid = [&](int N) {
    std::vector<double> v(N);
    for (int k = 0; k < N; ++k) v[k] = log_f(2 * M_PI * k / N);
    const double mx = *std::max_element(v.begin(), v.end());
    double acc = 0;
    for (double x : v) acc += std::exp(x - mx);
    return mx + std::log(acc / N);
  };
  double prev = trapezoid(32);
  for (int N = 64; N <= (1 << 16); N *= 2) {
    const double cur = trapezoid(N);
    if (std::abs(cur - prev) < abs_tol) return cur;
    prev = cur;
  }
  throw ToleranceNotMet("trapezoid rule did not settle");
}

McEstimate z_direct_mc(const Coupling& J, double beta, long samples, std::uint64_t seed) {
  Stream st(seed, 0);
  const double scale = beta / std::sqrt(static_cast<double>(J.n + J.m));
  std::vector<double> sig(J.n), tau(J.m);
  double mean = 0, m2 = 0;
  for (long k = 0; k < samples; ++k) {
    double ns = 0, nt = 0;
    for (auto& x : sig) x = st.normal(), ns += x * x;
    for (auto& x : tau) x = st.normal(), nt += x * x;
    const double fs = std::sqrt(J.n / ns), ft = std::sqrt(J.m / nt);
    double h = 0;
    for (int i = 0; i < J.n; ++i) {
      double row = 0;
      for (int j = 0; j < J.m; ++j) row += J(i, j) * tau[j];
      h += sig[i] * row;
    }
    const double v = std::exp(beta == 0 ? 0.0 : scale * h * fs * ft);
    const double d = v - mean;
    mean += d / (k + 1);
    m2 += d * (v - mean);
  }
  const double sd = std::sqrt(m2 / (samples - 1));
  return {std::log(mean), sd / (mean * std::sqrt(static_cast<double>(samples)))};
}

ContourCheck contour_identity_check(const Coupling& J, double beta, const QuadratureConfig& cfg) {
  ListSpectrum s(J.spectrum());
  const double an = alpha_n(J.n, J.m), bn = B_n(J.n, J.m, beta);
  SaddleFunctions f(s, an, bn);
  const auto cp = solve_gamma(s, an, bn);
  const auto q = qn_quadrature(f, cp.gamma1, cp.gamma2, cfg);
  ContourCheck c;
  c.log_Q = q.log_Q;
  c.log_Z_direct = z_direct(J, beta);
  c.log_Z_contour = log_contour_prefactor(J.n, J.m, beta) + q.log_Q;
  c.rel_error = std::abs(c.log_Z_direct - c.log_Z_contour) / std::max(std::abs(c.log_Z_direct), 1e-300);
  return c;
}

// ------------------------------------------------------------------ K_n

KnResult kn_quadrature(const SaddleFunctions& f, const QuadratureConfig& cfg) {
  const int n = f.n();
  const auto mc = mu1_coordinates(*f.spectrum, f.alpha_n, f.B_n);
  const double Ghat = eval_G_hat(f);
  const auto r = qn_inner(f, cplx(mc.mu1_1, 0.0), mc.mu1_2 + 1.0 / n, Ghat, cfg);
  KnResult k;
  k.K = r.value.real();
  k.im_over_re = std::abs(r.value.imag()) / std::abs(r.value.real());
  k.rel_error = r.error / std::abs(r.value.real());
  const double c1 = f.B_n * (0.5 * (mc.mu1_1 + mc.mu1_2) + 1.0 / n) / (mc.mu1_1 * mc.mu1_1);
  const double c2 = f.B_n / mc.mu1_1;
  k.I11 = std::sqrt(M_PI / (c1 * n)) * std::exp(-c2 * c2 / (4 * c1 * n));
  return k;
}

}  // namespace bssk
