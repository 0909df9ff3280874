#include "bssk/tw_fredholm.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/airy.hpp>
#include <cmath>

#include "bssk/errors.hpp"

namespace bssk {

void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double off = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  x.resize(n);
  w.resize(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (int k = 0; k < n; ++k) {
    const double v = es.eigenvectors()(0, k);
    x[k] = mid + half * es.eigenvalues()(k);
    w[k] = 2.0 * v * v * half;
  }
}

double tw1_cdf_fredholm(double s, int nodes) {
  if (nodes < 8) throw InvalidParameter("Nystrom rule needs at least 8 nodes");
  // Ai(t) < 1e-20 once (2/3) t^{3/2} > 46, i.e. t > 16
  const double L = std::max(16.0 - s, 10.0);
  std::vector<double> x, w;
  gauss_legendre(nodes, 0.0, L, x, w);
  Eigen::MatrixXd M(nodes, nodes);
  for (int i = 0; i < nodes; ++i)
    for (int j = 0; j < nodes; ++j)
      M(i, j) = (i == j ? 1.0 : 0.0) -
                std::sqrt(w[i] * w[j]) * boost::math::airy_ai(x[i] + x[j] + s);
  return M.partialPivLu().determinant();
}

}  // namespace bssk
