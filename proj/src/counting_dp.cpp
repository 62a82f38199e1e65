#include <quadmath.h>

#include <cmath>
#include <vector>

#include "dyckmatch/counting.hpp"

namespace dyck {

namespace {

// Folded walk on a = |height|. Up-steps from a = 0 carry multiplicity 2 for
// bridges (both signs) and 1 for excursions; a down-step from a > 0 is a closing
// step contributing log a. Carries (W, A1, A2) = (count, sum of partial S,
// sum of partial S^2), all damped by 1/2 per step so W stays O(1).
template <typename R>
void dp_sweep(int N, Ensemble e, const std::vector<R>& logtab, R& m1, R& m2) {
  if (N == 0) {
    m1 = 0;
    m2 = 0;
    return;
  }
  std::vector<R> W(N + 2, 0), A1(N + 2, 0), A2(N + 2, 0);
  std::vector<R> Wn(N + 2, 0), A1n(N + 2, 0), A2n(N + 2, 0);
  W[0] = 1;
  const R half = R(1) / 2;
  const R mult0 = e == Ensemble::Bridge ? R(1) : half;  // 2 * 1/2 or 1 * 1/2
  for (int t = 0; t < 2 * N; ++t) {
    int amax = std::min(t, 2 * N - t);
    for (int a = 0; a <= amax + 1; ++a) {
      Wn[a] = 0;
      A1n[a] = 0;
      A2n[a] = 0;
    }
    for (int a = 0; a <= amax; ++a) {
      if (a == 0) {
        Wn[1] += mult0 * W[0];
        A1n[1] += mult0 * A1[0];
        A2n[1] += mult0 * A2[0];
      } else {
        Wn[a + 1] += half * W[a];
        A1n[a + 1] += half * A1[a];
        A2n[a + 1] += half * A2[a];
        R l = logtab[a];
        Wn[a - 1] += half * W[a];
        A1n[a - 1] += half * (A1[a] + l * W[a]);
        A2n[a - 1] += half * (A2[a] + 2 * l * A1[a] + l * l * W[a]);
      }
    }
    W.swap(Wn);
    A1.swap(A1n);
    A2.swap(A2n);
  }
  m1 = A1[0] / W[0];
  m2 = A2[0] / W[0];
}

}  // namespace

MomentResult exact_moment_dp(int N, Ensemble e, int k) {
  if (k != 1 && k != 2) throw UnsupportedOrder();
  if (N < 0 || N > 20000) throw TooLarge("moment DP capped at N = 20000");

  double m1, m2;
  if (N <= 128) {
    std::vector<__float128> logtab(N + 1);
    for (int a = 1; a <= N; ++a) logtab[a] = logq((__float128)a);
    __float128 q1, q2;
    dp_sweep<__float128>(N, e, logtab, q1, q2);
    m1 = static_cast<double>(q1);
    m2 = static_cast<double>(q2);
  } else {
    std::vector<double> logtab(N + 1);
    for (int a = 1; a <= N; ++a) logtab[a] = std::log(static_cast<double>(a));
    dp_sweep<double>(N, e, logtab, m1, m2);
  }

  MomentResult res;
  res.N = N;
  res.ensemble = e;
  res.k = k;
  res.raw = k == 1 ? m1 : m2;
  res.rescaled = rescale_moment(N, k, m1, res.raw);
  res.method = "dp";
  return res;
}

}  // namespace dyck
