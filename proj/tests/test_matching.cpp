#include <cmath>
#include <set>

#include "doctest.h"
#include "dyckmatch/oracle.hpp"
#include "dyckmatch/sampling.hpp"

using namespace dyck;

namespace {

Instance random_instance(int N, SplitMix64& rng) {
  Instance inst;
  for (int j = 0; j < N; ++j) inst.whites.push_back((rng.next() >> 11) * 0x1p-53);
  for (int j = 0; j < N; ++j) inst.blacks.push_back((rng.next() >> 11) * 0x1p-53);
  std::sort(inst.whites.begin(), inst.whites.end());
  std::sort(inst.blacks.begin(), inst.blacks.end());
  return inst;
}

Matching random_matching(int N, SplitMix64& rng) {
  Matching m;
  m.perm.resize(N);
  for (int i = 0; i < N; ++i) m.perm[i] = i;
  for (int i = N - 1; i > 0; --i) std::swap(m.perm[i], m.perm[rng.below(i + 1)]);
  return m;
}

double profile_integral(const Instance& inst, const std::vector<int>& prof) {
  std::vector<double> pts = inst.whites;
  pts.insert(pts.end(), inst.blacks.begin(), inst.blacks.end());
  std::sort(pts.begin(), pts.end());
  double total = 0;
  for (std::size_t g = 1; g < pts.size(); ++g) total += prof[g] * (pts[g] - pts[g - 1]);
  return total;
}

}  // namespace

TEST_CASE("cost") {
  CHECK(cost({{1}, {2}}, Matching{{0}}) == 1);
  CHECK(cost({{1, 2}, {3, 4}}, Matching{{0, 1}}) == 4);
  CHECK(cost({{1, 2}, {3, 4}}, Matching{{1, 0}}) == 4);
  CHECK(cost({{1, 4}, {2, 3}}, Matching{{0, 1}}) == 2);
  CHECK(cost({{1, 4}, {2, 3}}, Matching{{1, 0}}) == 4);
  CHECK_THROWS_AS(cost({{1, 2}, {3, 4}}, Matching{{0}}), SizeMismatch);
}

TEST_CASE("k_pi profile") {
  CHECK(k_pi_profile({{1, 2}, {3, 4}}, Matching{{0, 1}}) == std::vector<int>{0, 1, 2, 1, 0});
  CHECK(k_pi_profile({{0.7}, {0.2}}, Matching{{0}}) == std::vector<int>{0, 1, 0});

  SplitMix64 rng{21};
  for (int trial = 0; trial < 100; ++trial) {
    int N = 1 + static_cast<int>(rng.below(10));
    Instance inst = random_instance(N, rng);
    Matching m = random_matching(N, rng);
    std::vector<int> prof = k_pi_profile(inst, m);
    CHECK(profile_integral(inst, prof) == doctest::Approx(cost(inst, m)).epsilon(1e-12));
  }
}

TEST_CASE("k_lb profile and h_lb") {
  CHECK(k_lb_profile({{1, 2}, {3, 4}}) == std::vector<int>{0, 1, 2, 1, 0});
  CHECK(h_lb({{1, 2}, {3, 4}}) == 4);
  CHECK(k_lb_profile({{1, 3}, {2, 4}}) == std::vector<int>{0, 1, 0, 1, 0});
  CHECK(h_lb({{1, 3}, {2, 4}}) == 2);

  SplitMix64 rng{22};
  for (int trial = 0; trial < 100; ++trial) {
    int N = 1 + static_cast<int>(rng.below(10));
    Instance inst = random_instance(N, rng);
    Matching ordered;
    for (int i = 0; i < N; ++i) ordered.perm.push_back(i);
    CHECK(cost(inst, ordered) == doctest::Approx(h_lb(inst)).epsilon(1e-12));
  }
}

TEST_CASE("stacks of a crossing twelve-point matching") {
  SignPath p = parse_path("WWBBWBWBWBWB");
  // white i pairs with black perm[i]; crossings make the midpath stacks bicolor
  Matching m{{2, 0, 3, 1, 5, 4}};

  auto s2 = stack_at(p, m, 2);
  REQUIRE(s2.size() == 2);
  CHECK(s2[0] == std::pair<int, int>{1, 1});
  CHECK(s2[1] == std::pair<int, int>{2, 1});

  auto s5 = stack_at(p, m, 5);
  REQUIRE(s5.size() == 3);
  CHECK(s5[0] == std::pair<int, int>{1, 1});
  CHECK(s5[1] == std::pair<int, int>{4, -1});
  CHECK(s5[2] == std::pair<int, int>{5, 1});

  CHECK(stack_at(p, m, 8).empty());
  CHECK_THROWS_AS(stack_at(p, m, 0), IndexOutOfRange);
  CHECK_THROWS_AS(stack_at(p, m, 13), IndexOutOfRange);

  CHECK_FALSE(is_optimal(p, m));
}

TEST_CASE("is_optimal") {
  CHECK(is_optimal(parse_path("WWBB"), Matching{{0, 1}}));
  CHECK(is_optimal(parse_path("WWBB"), Matching{{1, 0}}));
  CHECK(is_optimal(parse_path("WBBW"), Matching{{0, 1}}));
  CHECK_FALSE(is_optimal(parse_path("WBBW"), Matching{{1, 0}}));
}

TEST_CASE("count and entropy") {
  CHECK(count_optimal(parse_path("WBWB")).Z == 1);
  CHECK(count_optimal(parse_path("WWBB")).Z == 2);
  CHECK(count_optimal(parse_path("WWWBBB")).Z == 6);
  CHECK(count_optimal(SignPath{}).Z == 1);
  CHECK_THROWS_AS(count_optimal(SignPath{1, 1}), NotABridge);

  CHECK(entropy(parse_path("WBWB")) == 0);
  CHECK(entropy(parse_path("WWBB")) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(entropy(parse_path("WWWBBB")) == doctest::Approx(std::log(6.0)).epsilon(1e-14));
  CHECK(entropy(SignPath{}) == 0);

  SplitMix64 rng{23};
  for (int trial = 0; trial < 50; ++trial) {
    int N = 1 + static_cast<int>(rng.below(40));
    SignPath p = sample_bridge(N, rng);
    OptimalFamily fam = count_optimal(p);
    bigint prod = 1;
    for (long long r : fam.radices) prod *= r;
    CHECK(prod == fam.Z);
    CHECK(entropy(p) == doctest::Approx(std::log(fam.Z.convert_to<double>())).epsilon(1e-12));
  }
}

TEST_CASE("decoder") {
  CHECK(decode_mth(parse_path("WWBB"), 1).perm == std::vector<int>{0, 1});
  CHECK(decode_mth(parse_path("WWBB"), 2).perm == std::vector<int>{1, 0});
  CHECK(decode_mth(parse_path("WBWB"), 1).perm == std::vector<int>{0, 1});
  CHECK_THROWS_AS(decode_mth(parse_path("WWBB"), 0), IndexOutOfRange);
  CHECK_THROWS_AS(decode_mth(parse_path("WWBB"), 3), IndexOutOfRange);
  CHECK_THROWS_AS(decode_mth(SignPath{1, 1}, 1), NotABridge);
}

TEST_CASE("decoder bijective and optimal over all small bridges") {
  for (int N = 0; N <= 5; ++N) {
    for (const SignPath& p : all_paths(N, Ensemble::Bridge)) {
      OptimalFamily fam = count_optimal(p);
      std::set<std::vector<int>> seen;
      for (bigint m = 1; m <= fam.Z; ++m) {
        Matching dm = decode_mth(p, m);
        CHECK(is_optimal(p, dm));
        seen.insert(dm.perm);
      }
      CHECK(bigint(seen.size()) == fam.Z);
    }
  }
}

TEST_CASE("enumeration") {
  OptimalEnumerator en(parse_path("WWBB"));
  CHECK(en.total() == 2);
  Matching m;
  int n = 0;
  while (en.next(m)) ++n;
  CHECK(n == 2);

  OptimalEnumerator single(parse_path("WBWB"));
  n = 0;
  while (single.next(m)) ++n;
  CHECK(n == 1);

  OptimalEnumerator empty((SignPath{}));
  n = 0;
  while (empty.next(m)) {
    CHECK(m.perm.empty());
    ++n;
  }
  CHECK(n == 1);
}

TEST_CASE("enumerated set equals exhaustive argmin set") {
  SplitMix64 rng{24};
  for (int N = 2; N <= 7; ++N) {
    for (int trial = 0; trial < 40; ++trial) {
      Instance inst = random_instance(N, rng);
      OptimaReport rep = exhaustive_optima(inst);
      SignPath p = from_instance(inst);
      OptimalFamily fam = count_optimal(p);

      std::set<std::vector<int>> expect, got;
      for (const Matching& m : rep.argmin) expect.insert(m.perm);
      OptimalEnumerator en(p);
      Matching m;
      while (en.next(m)) got.insert(m.perm);
      CHECK(expect == got);
      CHECK(bigint(rep.degeneracy) == fam.Z);
    }
  }
}

TEST_CASE("cost never beats the ordered lower bound") {
  SplitMix64 rng{25};
  for (int trial = 0; trial < 1000; ++trial) {
    int N = 1 + static_cast<int>(rng.below(12));
    Instance inst = random_instance(N, rng);
    Matching m = random_matching(N, rng);
    CHECK(cost(inst, m) >= h_lb(inst) - 1e-12);
  }
}

TEST_CASE("decoded matchings meet the pointwise lower bound") {
  SplitMix64 rng{26};
  for (int trial = 0; trial < 100; ++trial) {
    int N = 1 + static_cast<int>(rng.below(64));
    SignPath p = sample_bridge(N, rng);
    OptimalFamily fam = count_optimal(p);
    bigint m_idx = 1 + bigint(rng.next()) % fam.Z;
    Matching m = decode_mth(p, m_idx);
    Instance inst = to_canonical_instance(p);
    CHECK(k_pi_profile(inst, m) == k_lb_profile(inst));
  }
}

TEST_CASE("entropy adds over concatenated bridges") {
  SplitMix64 rng{27};
  for (int trial = 0; trial < 200; ++trial) {
    int n1 = 1 + static_cast<int>(rng.below(20));
    int n2 = 1 + static_cast<int>(rng.below(20));
    SignPath a = sample_bridge(n1, rng), b = sample_bridge(n2, rng);
    SignPath ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    CHECK(entropy(ab) == doctest::Approx(entropy(a) + entropy(b)).epsilon(1e-12));
  }
}
