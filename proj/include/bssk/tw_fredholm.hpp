#pragma once

#include <vector>

namespace bssk {

// F_1(s) = det(I - K_s) on L^2(0, inf), K_s(x, y) = Ai(x + y + s),
// by Gauss-Legendre Nystrom discretisation of a truncated interval.
double tw1_cdf_fredholm(double s, int nodes = 96);

// Gauss-Legendre nodes and weights on [a, b] (Golub-Welsch).
void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

}  // namespace bssk
