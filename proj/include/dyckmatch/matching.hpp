#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <utility>
#include <vector>

#include "dyckmatch/paths.hpp"

namespace dyck {

using bigint = boost::multiprecision::cpp_int;

// White i is paired with black perm[i]; 0-based internally.
struct Matching {
  std::vector<int> perm;
};

struct OptimalFamily {
  SignPath path;
  std::vector<long long> radices;  // hbar at the closing steps, in step order
  bigint Z;                        // product of radices
};

double cost(const Instance& inst, const Matching& m);

// Number of links straddling each of the 2N+1 gaps between consecutive merged points.
std::vector<int> k_pi_profile(const Instance& inst, const Matching& m);

// |#white - #black| to the left of each gap; the pointwise lower bound.
std::vector<int> k_lb_profile(const Instance& inst);

// Cost of the ordered matching = integral of k_lb.
double h_lb(const Instance& inst);

// Points among positions 1..i paired beyond i, as (1-based position, color) sorted by position.
std::vector<std::pair<int, int>> stack_at(const SignPath& p, const Matching& m, int i);

// Every stack empty or monochromatic <=> cost-minimal for any generic instance with this path.
bool is_optimal(const SignPath& p, const Matching& m);

OptimalFamily count_optimal(const SignPath& p);

// S = log Z = sum of log hbar over closing steps.
double entropy(const SignPath& p);

// m-th optimal matching, 1 <= m <= Z. Mixed-radix digits of m-1 (radices = closing-step
// hbar values in step order); digit a_j picks the a_j-th stack element by increasing
// coordinate, 0-based. O(N log N) via an order-statistics tree over positions.
Matching decode_mth(const SignPath& p, const bigint& m);

class OptimalEnumerator {
 public:
  explicit OptimalEnumerator(const SignPath& p);
  bool next(Matching& out);  // false when exhausted
  const bigint& total() const { return fam_.Z; }

 private:
  OptimalFamily fam_;
  bigint m_;
};

}  // namespace dyck
