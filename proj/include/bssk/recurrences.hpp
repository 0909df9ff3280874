#pragma once

#include <vector>

#include "bssk/loe.hpp"
#include "bssk/stats.hpp"
#include "bssk/tridiag.hpp"

namespace bssk {

// Arrays are indexed by i = 1..n (entry 0 unused); suffix_weights runs to n+1.
struct RecurrenceState {
  int n = 0, m = 0;
  double gamma = 0, sigma = 0;
  std::vector<double> rho_plus, rho_minus;  // both negative (rho_1^- = 0)
  std::vector<double> alpha, beta;          // beta_1 = 0
  std::vector<double> tau, delta;
  std::vector<double> xi, omega;  // i >= 2
  std::vector<double> L, X;       // i >= 3
  std::vector<double> suffix_weights;  // w_i = 1 + omega_i w_{i+1}, w_{n+1} = 1; i >= 2

  double sum_L() const;
  // sum_{i=2}^n alpha_i - w_3 alpha_2, the part of sum L_i not carried by the X_i
  double alpha_remainder() const;
};

// Roots of rho^2 + c rho + (m-n+i-1)(i-1) with c = gamma m - (m-n+2i-1).
void characteristic_roots(int n, int m, double gamma, int i, double& rho_plus, double& rho_minus);

// gamma = d+ + sigma n^{-2/3}
RecurrenceState build_recurrence(const TridiagonalSample& t, double sigma);

struct TruncatedZ {
  double Z = 0;          // sum_{i=3}^{n-p} w_{i+1} X_i
  double tail = 0;       // sum_{i>n-p} w_{i+1} X_i
  double remainder = 0;  // alpha_remainder()
};
TruncatedZ truncated_Z(const RecurrenceState& s, int p);

// [sum log|gamma - mu_i| - C_lambda n + sum L_i + log(n)/6 - C1 sigma n^{1/3} + C2 sigma^{3/2}] / sqrt(log n)
double logsum_consistency(const SpectralView& sp, const RecurrenceState& s);

struct EigvecRecurrence {
  std::vector<double> F;          // F_1 .. F_{n-1} (index j-1)
  std::vector<double> log_ratio;  // log|v_{j+1}/v_j|
  std::vector<int> sign;          // sign of v_{j+1}/v_j
  bool flagged = false;           // some 1 + F_j == 0
};
EigvecRecurrence eigvec_recurrence(const TridiagonalSample& t, double mu1);
// Unit vector with positive first entry rebuilt from the ratios.
std::vector<double> reconstruct_eigenvector(const EigvecRecurrence& r);
// log10(|v_j|/||v||), j = 1..n
std::vector<double> decay_curve(const EigvecRecurrence& r);

struct MinorTop {
  double mu_tilde1 = 0, Y_n = 0;
};
MinorTop minor_top_eigenvalue(const TridiagonalSample& t, int p);

// Cutoff n - n^{1/3}(log n)^3 when positive, else the desk-scale fallback.
int ab_cutoff(int n, double fallback_fraction = 0.5);

struct AbConcentration {
  int cutoff = 0;
  double worst_centered = 0;  // max_j |a_j b_j - sqrt(j(m-n+j))|
  double max_ab = 0;
  double lemma_deviation = 0;  // |max_j a_j b_j - sqrt(mn)|
  double lemma_threshold = 0;  // (e log n)^2 n^{1/2}
  bool lemma_holds = false;
};
AbConcentration ab_concentration(const TridiagonalSample& t, int cutoff = 0);

struct IndependenceRow {
  double Z_stat = 0, Y_n = 0, full_L_stat = 0, T2n = 0;
};
struct IndependenceReport {
  CorrelationReport split;  // (Z/sqrt(2/3 log n), Y_n)
  CorrelationReport full;   // (sum L/sqrt(2/3 log n), T2n)
  std::vector<IndependenceRow> rows;
};
IndependenceReport independence_experiment(int n, int m, double sigma, int p, int samples, std::uint64_t seed,
                                           int workers, int bootstrap = 1000);

}  // namespace bssk
