#include "dyckmatch/paths.hpp"

#include <algorithm>
#include <cmath>

namespace dyck {

void require_signpath(const SignPath& p) {
  if (p.size() % 2 != 0) throw Error("sign path must have even length");
  for (int s : p)
    if (s != 1 && s != -1) throw Error("sign path entries must be +1 or -1");
}

HeightProfile heights(const SignPath& p) {
  require_signpath(p);
  HeightProfile hp;
  hp.doubled.reserve(p.size());
  hp.hbar.reserve(p.size());
  long long prefix = 0;
  for (int s : p) {
    long long d = 2 * prefix + s;
    hp.doubled.push_back(d);
    hp.hbar.push_back((std::llabs(d) + 1) / 2);
    prefix += s;
  }
  return hp;
}

std::vector<ClosingStep> closing_steps(const SignPath& p) {
  require_signpath(p);
  std::vector<ClosingStep> out;
  long long prefix = 0;
  long long t = 0;
  for (int s : p) {
    ++t;
    long long d = 2 * prefix + s;  // doubled midpoint height
    if (d * s < 0) out.push_back({t, (std::llabs(d) + 1) / 2});
    prefix += s;
  }
  return out;
}

PathClass classify(const SignPath& p) {
  if (p.size() % 2 != 0) return PathClass::Neither;
  long long sum = 0;
  bool nonneg = true;
  for (int s : p) {
    if (s != 1 && s != -1) return PathClass::Neither;
    sum += s;
    if (sum < 0) nonneg = false;
  }
  if (sum != 0) return PathClass::Neither;
  return nonneg ? PathClass::Excursion : PathClass::Bridge;
}

bool is_bridge(const SignPath& p) {
  PathClass c = classify(p);
  return c == PathClass::Bridge || c == PathClass::Excursion;
}

SignPath from_instance(const Instance& inst) {
  struct Tagged {
    double x;
    int color;
  };
  std::vector<Tagged> pts;
  pts.reserve(inst.whites.size() + inst.blacks.size());
  for (double w : inst.whites) pts.push_back({w, +1});
  for (double b : inst.blacks) pts.push_back({b, -1});
  std::sort(pts.begin(), pts.end(), [](const Tagged& a, const Tagged& b) { return a.x < b.x; });
  for (size_t i = 1; i < pts.size(); ++i)
    if (pts[i].x == pts[i - 1].x) throw DuplicateCoordinate();
  SignPath p;
  p.reserve(pts.size());
  for (const Tagged& t : pts) p.push_back(t.color);
  return p;
}

Instance to_canonical_instance(const SignPath& p) {
  if (!is_bridge(p)) throw NotABridge();
  Instance inst;
  for (size_t i = 0; i < p.size(); ++i) {
    double coord = static_cast<double>(i + 1);
    if (p[i] == 1)
      inst.whites.push_back(coord);
    else
      inst.blacks.push_back(coord);
  }
  return inst;
}

SignPath parse_path(const std::string& s) {
  SignPath p;
  p.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case 'U':
      case 'u':
      case 'W':
      case 'w':
      case '+':
        p.push_back(+1);
        break;
      case 'D':
      case 'd':
      case 'B':
      case 'b':
      case '-':
        p.push_back(-1);
        break;
      case ' ':
        break;
      default:
        throw Error(std::string("unrecognized step character '") + c + "'");
    }
  }
  return p;
}

std::string path_to_string(const SignPath& p) {
  std::string s;
  s.reserve(p.size());
  for (int v : p) s.push_back(v == 1 ? 'U' : 'D');
  return s;
}

const char* ensemble_name(Ensemble e) {
  return e == Ensemble::Bridge ? "bridge" : "excursion";
}

Ensemble parse_ensemble(const std::string& s) {
  if (s == "bridge" || s == "B" || s == "b") return Ensemble::Bridge;
  if (s == "excursion" || s == "E" || s == "e") return Ensemble::Excursion;
  throw Error("unknown ensemble '" + s + "' (want bridge or excursion)");
}

}  // namespace dyck
