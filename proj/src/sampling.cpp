#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <thread>

#include "dyckmatch/oracle.hpp"
#include "dyckmatch/sampling.hpp"

namespace dyck {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

SplitMix64 stream_for(std::uint64_t seed, std::uint64_t i) {
  // run (seed, i) through the finalizer once so neighbouring counters land in
  // unrelated regions of the state cycle
  SplitMix64 mix{seed + i * 0x9e3779b97f4a7c15ULL};
  return SplitMix64{mix.next()};
}

namespace {

void shuffled_steps(SignPath& p, SplitMix64& rng) {
  for (std::size_t i = p.size() - 1; i > 0; --i)
    std::swap(p[i], p[rng.below(i + 1)]);
}

}  // namespace

SignPath sample_bridge(int N, SplitMix64& rng) {
  if (N == 0) return {};
  SignPath p(2 * N);
  std::fill(p.begin(), p.begin() + N, 1);
  std::fill(p.begin() + N, p.end(), -1);
  shuffled_steps(p, rng);
  return p;
}

SignPath sample_excursion(int N, SplitMix64& rng) {
  if (N == 0) return {};
  int M = 2 * N + 1;
  SignPath p(M);
  std::fill(p.begin(), p.begin() + N + 1, 1);
  std::fill(p.begin() + N + 1, p.end(), -1);
  shuffled_steps(p, rng);
  // last minimum of the prefix sums marks the start of the good rotation
  long long sum = 0, minsum = 0;
  int rot = 0;
  for (int i = 0; i + 1 < M; ++i) {
    sum += p[i];
    if (sum <= minsum) {
      minsum = sum;
      rot = i + 1;
    }
  }
  SignPath out(2 * N);
  for (int i = 0; i < 2 * N; ++i) out[i] = p[(rot + 1 + i) % M];
  return out;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DYCK_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

namespace {

double path_entropy(const SignPath& p, const std::vector<double>& logtab) {
  long long y = 0;
  double S = 0;
  for (int s : p) {
    if ((s < 0 && y > 0) || (s > 0 && y < 0)) S += logtab[static_cast<std::size_t>(y < 0 ? -y : y)];
    y += s;
  }
  return S;
}

struct Kahan {
  double sum = 0, c = 0;
  void add(double x) {
    double t = x - c;
    double s = sum + t;
    c = (s - sum) - t;
    sum = s;
  }
};

struct BatchSums {
  Kahan p1, p2, p3, p4;
  long long n = 0;
};

}  // namespace

SampleStats mc_entropy_stats(int N, Ensemble e, long long K, std::uint64_t seed, int bins,
                             int threads, std::vector<double>* raw_out) {
  if (N < 1) throw SizeMismatch("need N >= 1");
  if (K < 2) throw SizeMismatch("need at least 2 samples");
  if (K > 10000000) throw TooLarge("sample count capped at 1e7");
  if (bins < 1) throw SizeMismatch("need at least 1 histogram bin");

  std::vector<double> logtab(static_cast<std::size_t>(N) + 1);
  for (int h = 1; h <= N; ++h) logtab[h] = std::log(static_cast<double>(h));
  const double shift = 0.5 * N * std::log(static_cast<double>(N));

  const int B = static_cast<int>(std::min<long long>(100, K));
  std::vector<BatchSums> batch(B);
  std::vector<double> all(static_cast<std::size_t>(K));

  std::atomic<int> next_batch{0};
  auto work = [&]() {
    for (;;) {
      int b = next_batch.fetch_add(1);
      if (b >= B) return;
      long long lo = K * b / B, hi = K * (b + 1) / B;
      BatchSums& bs = batch[b];
      for (long long i = lo; i < hi; ++i) {
        SplitMix64 rng = stream_for(seed, static_cast<std::uint64_t>(i));
        SignPath p = e == Ensemble::Bridge ? sample_bridge(N, rng) : sample_excursion(N, rng);
        double s = (path_entropy(p, logtab) - shift) / N;
        all[static_cast<std::size_t>(i)] = s;
        bs.p1.add(s);
        double s2 = s * s;
        bs.p2.add(s2);
        bs.p3.add(s2 * s);
        bs.p4.add(s2 * s2);
        ++bs.n;
      }
    }
  };
  int nt = std::min(resolve_threads(threads), B);
  if (nt <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nt; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  Kahan t1, t2, t3, t4;
  for (const BatchSums& bs : batch) {
    t1.add(bs.p1.sum);
    t2.add(bs.p2.sum);
    t3.add(bs.p3.sum);
    t4.add(bs.p4.sum);
  }
  double Kd = static_cast<double>(K);
  double m1 = t1.sum / Kd, m2 = t2.sum / Kd, m3 = t3.sum / Kd, m4 = t4.sum / Kd;

  SampleStats st;
  st.N = N;
  st.ensemble = e;
  st.samples = K;
  st.seed = seed;
  st.mean = m1;
  st.second_moment = m2;
  st.variance = std::max(0.0, m2 - m1 * m1);
  st.fourth_central = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * m1 * m1 * m1 * m1;
  st.kurtosis_ratio = st.variance > 0 ? st.fourth_central / (st.variance * st.variance) : 0;

  // batch-means standard errors
  double v1 = 0, v2 = 0;
  for (const BatchSums& bs : batch) {
    double b1 = bs.p1.sum / bs.n, b2 = bs.p2.sum / bs.n;
    v1 += (b1 - m1) * (b1 - m1);
    v2 += (b2 - m2) * (b2 - m2);
  }
  if (B > 1) {
    st.se_mean = std::sqrt(v1 / (static_cast<double>(B) * (B - 1)));
    st.se_second_moment = std::sqrt(v2 / (static_cast<double>(B) * (B - 1)));
  }

  double sigma = std::sqrt(st.variance);
  double half = sigma > 0 ? 6 * sigma : 0.5;
  double lo = m1 - half, hi = m1 + half;
  st.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int j = 0; j <= bins; ++j) st.bin_edges[j] = lo + (hi - lo) * j / bins;
  st.bin_counts.assign(static_cast<std::size_t>(bins), 0);
  for (double s : all) {
    int idx = static_cast<int>((s - lo) / (hi - lo) * bins);
    idx = std::clamp(idx, 0, bins - 1);
    ++st.bin_counts[static_cast<std::size_t>(idx)];
  }

  if (raw_out) *raw_out = std::move(all);
  return st;
}

double chi2_critical_1e3(int df) {
  // exact upper 1e-3 points for the cell counts used by the uniformity tests
  switch (df) {
    case 1: return 10.827566;
    case 4: return 18.466827;
    case 5: return 20.515006;
    case 13: return 34.528179;
    case 19: return 43.820196;
    case 69: return 111.055066;
  }
  // Wilson-Hilferty approximation elsewhere
  double z = 3.090232306167814;  // upper 1e-3 normal quantile
  double t = 1 - 2.0 / (9 * df) + z * std::sqrt(2.0 / (9 * df));
  return df * t * t * t;
}

Chi2Result chi2_uniformity(int N, Ensemble e, long long draws, std::uint64_t seed) {
  if (N > 8) throw TooLarge("uniformity test enumerates all paths, N capped at 8");
  if (draws < 1) throw SizeMismatch("need at least 1 draw");
  std::vector<SignPath> paths = all_paths(N, e);
  std::map<SignPath, int> index;
  for (std::size_t i = 0; i < paths.size(); ++i) index[paths[i]] = static_cast<int>(i);

  std::vector<long long> obs(paths.size(), 0);
  for (long long i = 0; i < draws; ++i) {
    SplitMix64 rng = stream_for(seed, static_cast<std::uint64_t>(i));
    SignPath p = e == Ensemble::Bridge ? sample_bridge(N, rng) : sample_excursion(N, rng);
    ++obs[static_cast<std::size_t>(index.at(p))];
  }

  double expect = static_cast<double>(draws) / static_cast<double>(paths.size());
  double stat = 0;
  for (long long o : obs) {
    double d = o - expect;
    stat += d * d / expect;
  }
  Chi2Result r;
  r.statistic = stat;
  r.df = static_cast<int>(paths.size()) - 1;
  r.critical_1e3 = chi2_critical_1e3(r.df);
  r.pass = stat <= r.critical_1e3;
  return r;
}

}  // namespace dyck
