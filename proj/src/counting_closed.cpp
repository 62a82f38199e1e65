#include <quadmath.h>

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "dyckmatch/counting.hpp"
#include "dyckmatch/sampling.hpp"

// Closed-form finite-N moments. All binomial path counts are carried scaled,
// Bhat_{a,b} = B_{a,b} / 2^a, so every intermediate stays O(1). Values are
// reached by ratio walks from the central column, never by big factorials.

namespace dyck {

namespace {

template <typename R>
struct Tables {
  std::vector<R> cent;  // cent[a] = Bhat_{a, a&1} = binom(a, ceil(a/2)) / 2^a
  std::vector<R> logt;
};

template <typename R>
Tables<R> make_tables(int steps, int N);

template <>
Tables<double> make_tables(int steps, int N) {
  Tables<double> T;
  T.cent.resize(steps + 1);
  T.cent[0] = 1;
  for (int a = 1; a <= steps; ++a)
    T.cent[a] = T.cent[a - 1] * a / (2.0 * ((a + 1) / 2));
  T.logt.resize(N + 2);
  T.logt[0] = 0;
  for (int h = 1; h <= N + 1; ++h) T.logt[h] = std::log(static_cast<double>(h));
  return T;
}

template <>
Tables<__float128> make_tables(int steps, int N) {
  Tables<__float128> T;
  T.cent.resize(steps + 1);
  T.cent[0] = 1;
  for (int a = 1; a <= steps; ++a)
    T.cent[a] = T.cent[a - 1] * a / ((__float128)2 * ((a + 1) / 2));
  T.logt.resize(N + 2);
  T.logt[0] = 0;
  for (int h = 1; h <= N + 1; ++h) T.logt[h] = logq((__float128)h);
  return T;
}

// ratio Bhat_{a,b+2} / Bhat_{a,b} for b >= 0
template <typename R>
inline R up_ratio(long long a, long long b) {
  long long m = (a + b) / 2;
  return m >= a ? R(0) : R(a - m) / R(m + 1);
}

// Bhat_{a,|b|}, from the central column
template <typename R>
R bhat_at(const Tables<R>& T, long long a, long long babs) {
  if (babs > a || ((a + babs) & 1)) return 0;
  R v = T.cent[a];
  for (long long bb = a & 1; bb < babs; bb += 2) v *= up_ratio<R>(a, bb);
  return v;
}

// Walker over Bhat_{a,b} with signed b, stepping b += 2 across the reflection axis.
template <typename R>
struct Walker {
  long long a, b;
  R v;
  void step() {
    if (b >= 0) {
      v *= up_ratio<R>(a, b);
    } else if (b < -1) {
      long long m = (a - b) / 2;  // (a + |b|)/2
      v = m <= a ? v * R(m) / R(a - m + 1) : R(0);
    }  // b == -1: |b| unchanged
    b += 2;
  }
};

template <typename R>
Walker<R> make_walker(const Tables<R>& T, long long a, long long b) {
  return {a, b, bhat_at(T, a, std::llabs(b))};
}

// k=1 style single-mark sum with weight log(h)^pow; also the c=1 piece of k=2.
template <typename R>
R single_mark_sum(const Tables<R>& T, int N, Ensemble e, int pow, R cut) {
  R tot = 0;
  for (long long t = 1; t <= 2LL * N; ++t) {
    long long a1 = t - 1, a2 = 2LL * N - t;
    long long h0 = (a1 & 1) ? 1 : 2;
    long long hmax = std::min(a1, a2 + 1);
    if (h0 > hmax) continue;
    R v1 = bhat_at(T, a1, h0);
    R v2 = bhat_at(T, a2, h0 - 1);
    R peak = 0;
    for (long long h = h0; h <= hmax; h += 2) {
      R prod = v1 * v2;
      if (prod > peak) peak = prod;
      if (prod < peak * cut) break;
      R w = T.logt[h];
      if (pow == 2) w *= w;
      if (e == Ensemble::Bridge) {
        tot += w * prod;
      } else {
        R c1 = v1 * (1 - up_ratio<R>(a1, h));
        R c2 = v2 * (1 - up_ratio<R>(a2, h - 1));
        tot += w * c1 * c2;
      }
      v1 *= up_ratio<R>(a1, h);
      v2 *= up_ratio<R>(a2, h - 1);
    }
  }
  return tot;
}

// c=2 piece of k=2: two marked closing steps at t1 < t2 with stack sizes h1, h2.
template <typename R>
R double_mark_sum(const Tables<R>& T, int N, Ensemble e, R cut, int threads) {
  long long n2 = 2LL * N;
  std::vector<R> partial(n2 + 1, R(0));
  std::atomic<long long> next_t1{1};

  auto work = [&]() {
    for (;;) {
      long long t1 = next_t1.fetch_add(1);
      if (t1 > n2 - 1) return;
      long long a1 = t1 - 1;
      R acc = 0;
      long long h1lo = (a1 & 1) ? 3 : 2;  // h1 = 1 carries weight log 1 = 0
      long long h1hi = std::min(a1, static_cast<long long>(N));  // stacks never exceed N
      R v1 = bhat_at(T, a1, h1lo);
      for (long long h1 = h1lo; h1 <= h1hi; h1 += 2) {
        if (v1 < cut * T.cent[a1]) break;
        R l1v1 = T.logt[h1] * v1;
        for (long long t2 = t1 + 1; t2 <= n2; ++t2) {
          long long d = t2 - t1 - 1, a3 = n2 - t2;
          long long h2lo = ((d + h1 + 1) & 1) ? 3 : 2;
          // keep the mid walker inside |h2 - h1 + 1| <= d from the start
          if (h2lo < h1 - 1 - d) h2lo += 2 * ((h1 - 1 - d - h2lo + 1) / 2);
          long long h2max = std::min(a3 + 1, h1 + d);  // beyond either, some count is 0
          if (h2lo > h2max) continue;
          Walker<R> wm = make_walker<R>(T, d, h2lo - h1 + 1);
          Walker<R> wp = e == Ensemble::Bridge ? make_walker<R>(T, d, h2lo + h1 - 1)
                                               : make_walker<R>(T, d, h2lo + h1 + 1);
          Walker<R> wr = make_walker<R>(T, a3, h2lo - 1);
          R peak = 0;
          for (long long h2 = h2lo; h2 <= h2max; h2 += 2) {
            R term;
            if (e == Ensemble::Bridge) {
              term = (wm.v + wp.v) * wr.v;
            } else {
              R cm = wm.v - wp.v;                              // C_{d, h2-h1+1, h1-1}
              R cr = wr.v * (1 - up_ratio<R>(a3, h2 - 1));     // C_{a3, -(h2-1), h2-1}
              R c1f = 1 - up_ratio<R>(a1, h1);                 // completes C_{a1,h1,0}/v1
              term = c1f * cm * cr;
            }
            R bound = (wm.v + wp.v) * wr.v;
            if (bound > peak) peak = bound;
            acc += T.logt[h2] * l1v1 * term;
            if (wm.b >= 0 && bound < peak * cut) break;
            wm.step();
            wp.step();
            wr.step();
          }
        }
        v1 *= up_ratio<R>(a1, h1);
      }
      partial[t1] = acc;
    }
  };

  int nt = std::max(1, threads);
  if (nt == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nt; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  R tot = 0;
  for (long long t1 = 1; t1 <= n2; ++t1) tot += partial[t1];
  return tot;
}

template <typename R>
void closed_run(int N, Ensemble e, int k, int threads, double& m1_out, double& mk_out) {
  R cut = sizeof(R) > 8 ? R(1e-36) : R(1e-22);
  Tables<R> T = make_tables<R>(2 * N, N);
  R denom;  // sum / denom = moment; bridge: Bhat_{2N,0}; excursion: 2 * (Bhat_{2N,0} - Bhat_{2N,2})
  if (e == Ensemble::Bridge)
    denom = T.cent[2 * N];
  else
    denom = 2 * T.cent[2 * N] * (1 - up_ratio<R>(2 * N, 0));
  R m1 = single_mark_sum<R>(T, N, e, 1, cut) / denom;
  m1_out = static_cast<double>(m1);
  if (k == 1) {
    mk_out = m1_out;
    return;
  }
  R c1 = single_mark_sum<R>(T, N, e, 2, cut);
  R c2 = double_mark_sum<R>(T, N, e, cut, threads);
  mk_out = static_cast<double>((c1 + c2) / denom);
}

}  // namespace

MomentResult exact_moment_closedform(int N, Ensemble e, int k, int threads) {
  if (k != 1 && k != 2) throw UnsupportedOrder();
  if (N < 0 || (k == 1 && N > 5000) || (k == 2 && N > 400))
    throw TooLarge("closed form capped at N = 5000 (k=1) / 400 (k=2)");

  MomentResult res;
  res.N = N;
  res.ensemble = e;
  res.k = k;
  res.method = "closed_form";
  if (N == 0) {
    res.raw = 0;
    res.rescaled = 0;
    return res;
  }
  int nt = resolve_threads(threads);
  double m1, mk;
  if (N <= 100)
    closed_run<__float128>(N, e, k, nt, m1, mk);
  else
    closed_run<double>(N, e, k, nt, m1, mk);
  res.raw = mk;
  res.rescaled = rescale_moment(N, k, m1, mk);
  return res;
}

}  // namespace dyck
