#pragma once
#include <string>
#include <vector>

#include "dyckmatch/matching.hpp"

namespace dyck {

// Paths with a steps and total displacement b, as a count: binom(a, (a+|b|)/2),
// zero when |b| > a or a+b is odd. Symmetric in b.
bigint b_ab(long long a, long long b);

// Paths with a steps, displacement b, never going below -d: reflection formula
// (B_{a,b} - B_{a,b+2(d+1)}) * theta(b+d).
bigint c_abd(long long a, long long b, long long d);

bigint tn_count(int N, Ensemble e);

struct MomentResult {
  int N;
  Ensemble ensemble;
  int k;
  double raw;       // M_{N,k} = <S^k>
  double rescaled;  // <s^k> with s = (S - N log(N)/2) / N
  std::string method;
};

// Aggregate forward sweep over (step, |height|) carrying (count, sum S, sum S^2).
// O(N^2) time, O(N) memory. N <= 20000.
MomentResult exact_moment_dp(int N, Ensemble e, int k);

// Finite-N closed form: paths decomposed around marked closing steps,
// counted by B/C factors. O(N^2) for k=1 (N <= 5000), O(N^4) for k=2 (N <= 400).
MomentResult exact_moment_closedform(int N, Ensemble e, int k, int threads = 0);

// Coefficients c_0..c_M of M_k(z) = sum_N z^N T_N M_{N,k}, by float series
// arithmetic on the Catalan tree function substitution x(z) = z C(z)^2. M <= 500.
std::vector<double> gf_moment_series(Ensemble e, int k, int order);

// Exact big-integer count via the same folded walk as the moment DP; reference
// for the DP structure. N <= 200.
bigint dp_count(int N, Ensemble e);

// Exact sum over t, hbar of the single-marked-closing-step path count;
// equals N * T_N since every path has exactly N closing steps.
bigint total_marks(int N, Ensemble e);

double rescale_moment(int N, int k, double m1_raw, double mk_raw);

}  // namespace dyck
