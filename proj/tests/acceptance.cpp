// Acceptance gate: each criterion prints one [PASS]/[FAIL] line and the binary
// exits nonzero if any requested criterion fails. Run a single one with
// --criterion K, or everything with no arguments.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "dyckmatch/asymptotics.hpp"
#include "dyckmatch/counting.hpp"
#include "dyckmatch/matching.hpp"
#include "dyckmatch/oracle.hpp"
#include "dyckmatch/sampling.hpp"

using namespace dyck;

namespace {

constexpr std::uint64_t kSeed = 20250101;

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

bool report(int k, bool ok, const std::string& what, double t0) {
  std::printf("[%s] criterion %d: %s (%.1f s)\n", ok ? "PASS" : "FAIL", k,
              what.c_str(), now_s() - t0);
  std::fflush(stdout);
  return ok;
}

Instance random_instance(int N, SplitMix64& rng) {
  Instance inst;
  inst.whites.resize(N);
  inst.blacks.resize(N);
  for (double& x : inst.whites) x = (rng.next() >> 11) * 0x1p-53;
  for (double& x : inst.blacks) x = (rng.next() >> 11) * 0x1p-53;
  std::sort(inst.whites.begin(), inst.whites.end());
  std::sort(inst.blacks.begin(), inst.blacks.end());
  return inst;
}

// 1. Exhaustive argmin set == enumerated family, size == Z.
bool criterion1() {
  double t0 = now_s();
  SplitMix64 rng = stream_for(kSeed, 1);
  for (int N = 2; N <= 7; ++N) {
    for (int rep = 0; rep < 500; ++rep) {
      Instance inst = random_instance(N, rng);
      OptimaReport rep_ex = exhaustive_optima(inst, 1e-9);
      SignPath p = from_instance(inst);
      OptimalFamily fam = count_optimal(p);
      if (bigint(rep_ex.degeneracy) != fam.Z)
        return report(1, false,
                      "argmin count != Z at N=" + std::to_string(N), t0);
      std::set<std::vector<int>> expect, got;
      for (const Matching& m : rep_ex.argmin) expect.insert(m.perm);
      OptimalEnumerator en(p);
      Matching m;
      while (en.next(m)) got.insert(m.perm);
      if (expect != got)
        return report(1, false, "enumerated set mismatch at N=" + std::to_string(N),
                      t0);
    }
  }
  return report(1, true, "argmin sets equal enumerated optima, 500 instances each N=2..7",
                t0);
}

bool check_decoding(const SignPath& p) {
  OptimalFamily fam = count_optimal(p);
  int N = static_cast<int>(p.size()) / 2;
  // perms packed 4 bits per entry; the criterion stops at N = 12
  std::vector<std::uint64_t> codes;
  codes.reserve(fam.Z.convert_to<std::size_t>());
  for (bigint m = 1; m <= fam.Z; ++m) {
    Matching mt = decode_mth(p, m);
    if (!is_optimal(p, mt)) return false;
    std::uint64_t code = 0;
    for (int i = 0; i < N; ++i) code |= static_cast<std::uint64_t>(mt.perm[i]) << (4 * i);
    codes.push_back(code);
  }
  std::sort(codes.begin(), codes.end());
  if (std::adjacent_find(codes.begin(), codes.end()) != codes.end()) return false;
  return bigint(codes.size()) == fam.Z;
}

// 2. decode_mth(1..Z) distinct and monochromatic.
bool criterion2() {
  double t0 = now_s();
  for (int N = 1; N <= 6; ++N) {
    for (const SignPath& p : all_paths(N, Ensemble::Bridge)) {
      if (!check_decoding(p))
        return report(2, false, "decoder failed on a bridge at N=" + std::to_string(N),
                      t0);
    }
  }
  SplitMix64 rng = stream_for(kSeed, 2);
  for (int rep = 0; rep < 100; ++rep) {
    SignPath p = sample_bridge(12, rng);
    if (!check_decoding(p))
      return report(2, false, "decoder failed on a random N=12 bridge", t0);
  }
  return report(2, true, "decoder bijective and monochromatic, all bridges N<=6 + 100 at N=12",
                t0);
}

// 3. brute = DP = closed form = GF coefficients.
bool criterion3() {
  double t0 = now_s();
  for (Ensemble e : {Ensemble::Bridge, Ensemble::Excursion}) {
    for (int k : {1, 2}) {
      for (int N = 0; N <= 8; ++N) {
        double b = brute_moment(N, e, k);
        double d = exact_moment_dp(N, e, k).raw;
        if (std::abs(b - d) > 1e-10)
          return report(3, false, "brute vs dp at N=" + std::to_string(N), t0);
      }
      for (int N = 0; N <= 60; ++N) {
        double d = exact_moment_dp(N, e, k).raw;
        double c = exact_moment_closedform(N, e, k).raw;
        if (std::abs(d - c) > 1e-10)
          return report(3, false, "dp vs closed form at N=" + std::to_string(N), t0);
      }
      std::vector<double> series = gf_moment_series(e, k, 50);
      for (int N = 0; N <= 50; ++N) {
        double expect =
            tn_count(N, e).convert_to<double>() * exact_moment_dp(N, e, k).raw;
        double err = std::abs(series[N] - expect);
        if (expect != 0) err /= std::abs(expect);
        if (err > 1e-8)
          return report(3, false, "gf coefficient at N=" + std::to_string(N), t0);
      }
    }
  }
  return report(3, true, "brute = dp = closed form = gf coefficients, both ensembles, k=1,2",
                t0);
}

// 4. DP first moment at N = 10^3, 10^4 against the limit constants.
bool criterion4() {
  double t0 = now_s();
  for (Ensemble e : {Ensemble::Bridge, Ensemble::Excursion}) {
    ConvergenceTable t = convergence_report({1000, 10000}, e, 1, MomentSource::Dp);
    const ConvergenceRow& lo = t.rows[0];
    const ConvergenceRow& hi = t.rows[1];
    std::printf("  %s: s(10^3)=%.6f s(10^4)=%.6f limit=%.6f dev %.2e -> %.2e\n",
                ensemble_name(e), lo.rescaled, hi.rescaled, hi.constant,
                std::abs(lo.deviation), std::abs(hi.deviation));
    if (std::abs(hi.deviation) > 0.05)
      return report(4, false, std::string(ensemble_name(e)) + " off the constant", t0);
    if (!(std::abs(hi.deviation) < std::abs(lo.deviation)))
      return report(4, false, std::string(ensemble_name(e)) + " deviation not shrinking",
                    t0);
    double a = std::abs(lo.normalized), b = std::abs(hi.normalized);
    if (std::max(a, b) > 3 * std::min(a, b))
      return report(4, false,
                    std::string(ensemble_name(e)) + " normalized deviation unstable", t0);
  }
  return report(4, true, "dp mean at N=10^4 within 0.05 of the limits, converging", t0);
}

// 5. Closed-form second moment at N = 100, 400.
bool criterion5() {
  double t0 = now_s();
  std::string bad;
  for (Ensemble e : {Ensemble::Bridge, Ensemble::Excursion}) {
    ConvergenceTable t =
        convergence_report({100, 400}, e, 2, MomentSource::ClosedForm);
    const ConvergenceRow& lo = t.rows[0];
    const ConvergenceRow& hi = t.rows[1];
    std::printf("  %s: s2(100)=%.6f s2(400)=%.6f limit=%.6f dev %.2e -> %.2e\n",
                ensemble_name(e), lo.rescaled, hi.rescaled, hi.constant,
                std::abs(lo.deviation), std::abs(hi.deviation));
    if (std::abs(hi.deviation) > 0.1)
      bad += std::string(bad.empty() ? "" : "; ") + ensemble_name(e) + " off the constant";
    else if (!(std::abs(hi.deviation) < std::abs(lo.deviation)))
      bad += std::string(bad.empty() ? "" : "; ") + ensemble_name(e) + " deviation not shrinking";
  }
  if (!bad.empty()) return report(5, false, bad, t0);
  return report(5, true, "closed-form second moment at N=400 within 0.1 of the limits",
                t0);
}

// 6. Appendix integral against both closed forms, under a second.
bool criterion6() {
  double t0 = now_s();
  double q = variance_quadrature();
  const double pi2 = std::numbers::pi * std::numbers::pi;
  double exact = 1.0 / 3 - pi2 / 72;
  double b1 = predicted_constants(Ensemble::Bridge, 1);
  double b2 = predicted_constants(Ensemble::Bridge, 2);
  bool ok = std::abs(q - exact) <= 1e-9 && std::abs(q - (b2 - b1 * b1)) <= 1e-9 &&
            now_s() - t0 < 1.0;
  return report(6, ok, "quadrature = 1/3 - pi^2/72 = <s^2>_B - <s>_B^2 to 1e-9", t0);
}

// 7. Monte Carlo at N = 10^4, K = 10^5.
bool criterion7() {
  double t0 = now_s();
  SampleStats st = mc_entropy_stats(10000, Ensemble::Excursion, 100000, kSeed);
  double c1 = predicted_constants(Ensemble::Excursion, 1);
  double c2 = predicted_constants(Ensemble::Excursion, 2);
  std::printf("  mean %.6f (limit %.6f, se %.1e)  m2 %.6f (limit %.6f, se %.1e)  kurt %.3f\n",
              st.mean, c1, st.se_mean, st.second_moment, c2, st.se_second_moment,
              st.kurtosis_ratio);
  if (std::abs(st.mean - c1) > 3 * st.se_mean + 0.02)
    return report(7, false, "sample mean off -gamma/2", t0);
  if (std::abs(st.second_moment - c2) > 3 * st.se_second_moment + 0.03)
    return report(7, false, "sample second moment off the limit", t0);
  if (st.kurtosis_ratio < 2.4 || st.kurtosis_ratio > 3.0)
    return report(7, false, "kurtosis ratio outside [2.4, 3.0]", t0);
  return report(7, true, "monte carlo excursion N=10^4 K=10^5 matches the limits", t0);
}

// 8. Sampler uniformity chi-square.
bool criterion8() {
  double t0 = now_s();
  for (int N : {2, 3, 4}) {
    for (Ensemble e : {Ensemble::Bridge, Ensemble::Excursion}) {
      Chi2Result r = chi2_uniformity(N, e, 100000, kSeed);
      std::printf("  N=%d %s: chi2 %.2f, df %d, critical %.2f\n", N, ensemble_name(e),
                  r.statistic, r.df, r.critical_1e3);
      if (!r.pass)
        return report(8, false,
                      "chi-square rejected at N=" + std::to_string(N) + " " +
                          ensemble_name(e),
                      t0);
    }
  }
  return report(8, true, "chi-square uniformity at N=2,3,4, both ensembles, 10^5 draws",
                t0);
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion 1..8]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > 8) {
    std::fprintf(stderr, "criterion must be 1..8\n");
    return 2;
  }
  bool (*fns[])() = {criterion1, criterion2, criterion3, criterion4,
                     criterion5, criterion6, criterion7, criterion8};
  bool all = true;
  for (int k = 1; k <= 8; ++k) {
    if (only != 0 && only != k) continue;
    all = fns[k - 1]() && all;
  }
  return all ? 0 : 1;
}
