#include "dyckmatch/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dyck {

namespace {

bool all_integral(const Instance& inst) {
  auto ok = [](double x) { return std::nearbyint(x) == x && std::fabs(x) < 9e15; };
  return std::all_of(inst.whites.begin(), inst.whites.end(), ok) &&
         std::all_of(inst.blacks.begin(), inst.blacks.end(), ok);
}

}  // namespace

OptimaReport exhaustive_optima(const Instance& inst, double rel_tol) {
  size_t n = inst.whites.size();
  if (inst.blacks.size() != n) throw SizeMismatch();
  if (n > 8) throw TooLarge("exhaustive search capped at N = 8");

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  OptimaReport rep;

  if (all_integral(inst)) {
    // exact arithmetic: no tie tolerance needed
    long long best = -1;
    std::vector<std::vector<int>> arg;
    do {
      long long c = 0;
      for (size_t i = 0; i < n; ++i)
        c += std::llabs(static_cast<long long>(inst.whites[i]) -
                        static_cast<long long>(inst.blacks[perm[i]]));
      if (best < 0 || c < best) {
        best = c;
        arg.clear();
      }
      if (c == best) arg.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    rep.min_cost = static_cast<double>(best);
    for (auto& a : arg) rep.argmin.push_back({std::move(a)});
  } else {
    double best = -1;
    std::vector<std::pair<double, std::vector<int>>> all;
    do {
      double c = 0;
      for (size_t i = 0; i < n; ++i) c += std::fabs(inst.whites[i] - inst.blacks[perm[i]]);
      if (best < 0 || c < best) best = c;
      all.push_back({c, perm});
    } while (std::next_permutation(perm.begin(), perm.end()));
    double cut = best + rel_tol * std::max(1.0, best);
    rep.min_cost = best;
    for (auto& [c, a] : all)
      if (c <= cut) rep.argmin.push_back({std::move(a)});
  }
  rep.degeneracy = static_cast<long long>(rep.argmin.size());
  return rep;
}

std::vector<SignPath> all_paths(int N, Ensemble e) {
  if (N > 8) throw TooLarge("path enumeration capped at N = 8");
  std::vector<SignPath> out;
  if (N == 0) {
    out.push_back({});
    return out;
  }
  SignPath p(2 * N);
  std::fill(p.begin(), p.begin() + N, -1);
  std::fill(p.begin() + N, p.end(), +1);
  do {
    if (e == Ensemble::Excursion) {
      long long y = 0;
      bool ok = true;
      for (int s : p) {
        y += s;
        if (y < 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
    }
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

double brute_moment(int N, Ensemble e, int k) {
  if (N > 8) throw TooLarge("brute moment capped at N = 8");
  long double tot = 0;
  long long cnt = 0;
  for (const SignPath& p : all_paths(N, e)) {
    long double S = 0;
    long long y = 0;
    for (int s : p) {
      if (s < 0 && y > 0)
        S += std::log(static_cast<long double>(y));
      else if (s > 0 && y < 0)
        S += std::log(static_cast<long double>(-y));
      y += s;
    }
    long double term = S;
    for (int j = 1; j < k; ++j) term *= S;
    tot += term;
    ++cnt;
  }
  return static_cast<double>(tot / cnt);
}

}  // namespace dyck
