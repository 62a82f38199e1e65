#include "dyckmatch/counting.hpp"

#include <cmath>

namespace dyck {

bigint b_ab(long long a, long long b) {
  if (a < 0) return 0;
  long long ab = std::llabs(b);
  if (ab > a || ((a + ab) & 1)) return 0;
  long long k = (a + ab) / 2;
  // binom(a, k) by the multiplicative recurrence
  bigint r = 1;
  for (long long i = 1; i <= a - k; ++i) {
    r *= (k + i);
    r /= i;
  }
  return r;
}

bigint c_abd(long long a, long long b, long long d) {
  if (b + d < 0) return 0;
  return b_ab(a, b) - b_ab(a, b + 2 * (d + 1));
}

bigint tn_count(int N, Ensemble e) {
  if (N < 0) throw Error("negative N");
  bigint b = b_ab(2LL * N, 0);
  if (e == Ensemble::Bridge) return b;
  return b / (N + 1);
}

bigint dp_count(int N, Ensemble e) {
  if (N > 200) throw TooLarge("exact DP count capped at N = 200");
  if (N == 0) return 1;
  std::vector<bigint> W(N + 2, 0), W2(N + 2);
  W[0] = 1;
  int mult0 = e == Ensemble::Bridge ? 2 : 1;
  for (int t = 0; t < 2 * N; ++t) {
    int amax = std::min(t, 2 * N - t);
    for (int a = 0; a <= amax + 1 && a <= N + 1; ++a) W2[a] = 0;
    for (int a = 0; a <= amax; ++a) {
      if (W[a] == 0) continue;
      if (a == 0) {
        W2[1] += mult0 * W[0];
      } else {
        if (a + 1 <= N) W2[a + 1] += W[a];
        W2[a - 1] += W[a];
      }
    }
    std::swap(W, W2);
  }
  return W[0];
}

bigint total_marks(int N, Ensemble e) {
  bigint tot = 0;
  for (long long t = 1; t <= 2LL * N; ++t) {
    for (long long h = 1; h <= N; ++h) {
      if (e == Ensemble::Bridge) {
        tot += 2 * b_ab(t - 1, h) * b_ab(2LL * N - t, h - 1);
      } else {
        tot += c_abd(t - 1, h, 0) * c_abd(2LL * N - t, -(h - 1), h - 1);
      }
    }
  }
  return tot;
}

double rescale_moment(int N, int k, double m1_raw, double mk_raw) {
  if (N == 0) return 0;
  double n = N;
  double half_nlog = 0.5 * n * std::log(n);
  if (k == 1) return (m1_raw - half_nlog) / n;
  if (k == 2) return (mk_raw - 2 * half_nlog * m1_raw + half_nlog * half_nlog) / (n * n);
  throw UnsupportedOrder();
}

}  // namespace dyck
