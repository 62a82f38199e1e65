#pragma once
#include <string>
#include <vector>

#include "dyckmatch/errors.hpp"

namespace dyck {

// A color ordering of 2N points: +1 for white, -1 for black.
// Identified with a lattice path of up/down steps.
using SignPath = std::vector<int>;

enum class Ensemble { Bridge, Excursion };
enum class PathClass { Bridge, Excursion, Neither };

struct Instance {
  std::vector<double> whites;  // sorted ascending
  std::vector<double> blacks;  // sorted ascending
};

// Midpoint heights stored doubled to stay integral: 2*h_i = 2*(s_1+...+s_{i-1}) + s_i,
// always odd. hbar_i = |h_i| + 1/2 = (|2h_i| + 1) / 2.
struct HeightProfile {
  std::vector<long long> doubled;
  std::vector<long long> hbar;
};

struct ClosingStep {
  long long index;  // 1-based step position
  long long hbar;
};

void require_signpath(const SignPath& p);

HeightProfile heights(const SignPath& p);

// Steps with h_i * s_i < 0. Exactly N of them on a bridge.
std::vector<ClosingStep> closing_steps(const SignPath& p);

PathClass classify(const SignPath& p);

bool is_bridge(const SignPath& p);

SignPath from_instance(const Instance& inst);

// Inverse embedding with unit spacings: point i sits at coordinate i.
Instance to_canonical_instance(const SignPath& p);

// "UUDD" / "WWBB" style text form (U/W = +1, D/B = -1).
SignPath parse_path(const std::string& s);
std::string path_to_string(const SignPath& p);

const char* ensemble_name(Ensemble e);
Ensemble parse_ensemble(const std::string& s);

}  // namespace dyck
