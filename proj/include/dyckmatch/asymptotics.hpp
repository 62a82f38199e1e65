#pragma once
#include <vector>

#include "dyckmatch/counting.hpp"

namespace dyck {

// Euler-Mascheroni constant, 20 significant digits (OEIS A001620).
inline constexpr double GAMMA_E = 0.57721566490153286061;

// Limit constants of the rescaled entropy moments:
//   <s>_B = -(gamma+2)/2, <s>_E = -gamma/2,
//   <s^2>_B = 4/3 + gamma^2/4 + gamma - pi^2/72, <s^2>_E = gamma^2/4 + 5 pi^2/24 - 2.
double predicted_constants(Ensemble e, int k);

// Truncated asymptotic expansion of the raw moment M_{N,k}:
// k=1: N log(N)/2 + <s> N;  k=2: N^2 log(N)^2/4 + <s> N^2 log N + <s^2> N^2.
double predicted_moment(int N, Ensemble e, int k);

// integral_0^1 [-(2(1-z) + (1+z) log z) / (1-z)^3] arcsin^2(sqrt z) dz
// = 1/3 - pi^2/72, the variance of s over the Brownian bridge. Absolute error <= 1e-9.
double variance_quadrature();

enum class MomentSource { Dp, ClosedForm };

struct ConvergenceRow {
  int N;
  double rescaled;
  double constant;
  double deviation;
  double normalized;  // deviation * sqrt(N)/log N (k=1) or * sqrt(N)/log^2 N (k=2)
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  bool flagged;  // normalized deviation ratio over the top decade exceeds 10
};

ConvergenceTable convergence_report(const std::vector<int>& Ns, Ensemble e, int k,
                                    MomentSource source, int threads = 0);

}  // namespace dyck
