#pragma once
#include <cstdint>
#include <vector>

#include "dyckmatch/paths.hpp"

namespace dyck {

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next();
  // uniform in [0, bound) by rejection
  std::uint64_t below(std::uint64_t bound);
};

// Independent stream for the i-th sample of a run: the (seed, i) pair is mixed
// through the splitmix finalizer so streams never overlap.
SplitMix64 stream_for(std::uint64_t seed, std::uint64_t i);

SignPath sample_bridge(int N, SplitMix64& rng);

// Cycle lemma: shuffle N+1 ups and N downs, take the unique rotation with all
// proper prefix sums positive, drop its leading up-step.
SignPath sample_excursion(int N, SplitMix64& rng);

struct SampleStats {
  int N = 0;
  Ensemble ensemble = Ensemble::Bridge;
  long long samples = 0;
  std::uint64_t seed = 0;
  double mean = 0;             // mean of s
  double second_moment = 0;    // mean of s^2
  double variance = 0;         // central
  double fourth_central = 0;
  double kurtosis_ratio = 0;   // fourth_central / variance^2
  double se_mean = 0;          // batch-means standard errors (100 batches)
  double se_second_moment = 0;
  std::vector<double> bin_edges;
  std::vector<long long> bin_counts;
};

// K samples of s = (S - N log(N)/2) / N. Deterministic for fixed (seed, K, N)
// regardless of thread count. raw_out, when given, receives the per-sample values.
SampleStats mc_entropy_stats(int N, Ensemble e, long long K, std::uint64_t seed,
                             int bins = 200, int threads = 0,
                             std::vector<double>* raw_out = nullptr);

struct Chi2Result {
  double statistic;
  int df;
  double critical_1e3;  // upper critical value at significance 1e-3
  bool pass;
};

// Goodness of fit of the sampler against the uniform distribution on all paths
// of the ensemble. Needs T_N small enough to enumerate (N <= 8).
Chi2Result chi2_uniformity(int N, Ensemble e, long long draws, std::uint64_t seed);

double chi2_critical_1e3(int df);

int resolve_threads(int requested);

}  // namespace dyck
