#pragma once
#include <vector>

#include "dyckmatch/matching.hpp"

namespace dyck {

struct OptimaReport {
  double min_cost;
  std::vector<Matching> argmin;
  long long degeneracy;
};

// All N! matchings, N <= 8. Ties at relative tol; exact integer arithmetic when
// every coordinate is integral.
OptimaReport exhaustive_optima(const Instance& inst, double rel_tol = 1e-9);

// (1/T_N) sum over all bridges/excursions of S^k, by explicit path generation. N <= 8.
double brute_moment(int N, Ensemble e, int k);

// All paths of the ensemble in lexicographic step order (-1 < +1).
std::vector<SignPath> all_paths(int N, Ensemble e);

}  // namespace dyck
