#pragma once

#include <map>
#include <string>

#include "bssk/critical_point.hpp"
#include "bssk/model.hpp"
#include "bssk/quadrature.hpp"
#include "bssk/tridiag.hpp"

namespace bssk {

enum class Side { high, low };
const char* to_string(Side s);

struct FreeEnergyReport {
  double F_limit = 0, F_finite = 0, statistic = 0;
  Side side = Side::high;
  std::map<std::string, double> diagnostics;
};

// (n+m)/sqrt(log(n)/6) (F_finite - F_limit + log(n)/(12(n+m)))
double fluctuation_statistic(double F_finite, double F_limit, int n, int m);

double F_limit(double beta, double lambda, AVariant v = AVariant::two_b);
// The two branches separately, for the continuity check.
double F_limit_high(double beta, double lambda);
double F_limit_low(double beta, double lambda, AVariant v);

// log Q_n = n G(gamma1, gamma2) + log pi - log n - log(D)/2
double log_Qn_steepest_descent(const CriticalPoint& cp, const SaddleFunctions& f);

// F_{n,m} = (log Q_n + log prefactor)/(n+m), the prefactor taken exactly.
double F_from_log_Q(double log_Q, int n, int m, double beta);

FreeEnergyReport F_finite_high(const SpectralView& s, const ModelParams& p);
FreeEnergyReport F_finite_low(const SpectralView& s, const ModelParams& p, CoeffVariant v);

// Low-temperature free energy without the limit-law coefficient:
// log Q_n = n G_hat + log I_11 + log K_n with K_n by quadrature.
struct LowTemperatureDirect {
  double F_finite, statistic, log_Q, G_hat, K_n, I11;
};
LowTemperatureDirect F_finite_low_direct(const SpectralView& s, const ModelParams& p,
                                         const QuadratureConfig& cfg = {});

}  // namespace bssk
