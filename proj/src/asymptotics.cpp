#include <cmath>
#include <numbers>
#include <vector>

#include "dyckmatch/asymptotics.hpp"

namespace dyck {

double predicted_constants(Ensemble e, int k) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  if (k == 1) return e == Ensemble::Bridge ? -(GAMMA_E + 2) / 2 : -GAMMA_E / 2;
  if (k == 2) {
    double g2 = GAMMA_E * GAMMA_E;
    return e == Ensemble::Bridge ? 4.0 / 3 + g2 / 4 + GAMMA_E - pi2 / 72
                                 : g2 / 4 + 5 * pi2 / 24 - 2;
  }
  throw UnsupportedOrder();
}

double predicted_moment(int N, Ensemble e, int k) {
  double lN = std::log(static_cast<double>(N));
  double Nd = N;
  if (k == 1) return 0.5 * Nd * lN + predicted_constants(e, 1) * Nd;
  double c1 = predicted_constants(e, 1), c2 = predicted_constants(e, 2);
  if (k == 2) return 0.25 * Nd * Nd * lN * lN + c1 * Nd * Nd * lN + c2 * Nd * Nd;
  throw UnsupportedOrder();
}

namespace {

struct GaussRule {
  std::vector<double> x, w;  // nodes and weights on [-1, 1]
};

GaussRule legendre_rule(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = x;
    r.w[i] = 2 / ((1 - x * x) * dp * dp);
  }
  return r;
}

// -(2(1-z) + (1+z) log z) / (1-z)^3; the pole at z=1 is removable, value 1/6.
// Direct evaluation cancels catastrophically near 1, so switch to the series
// in u = 1-z well before that: sum_m (m+1)/((m+2)(m+3)) u^m.
double kernel(double z) {
  if (z > 0.6) {
    double u = 1 - z, s = 0, up = 1;
    for (int m = 0; m < 200; ++m) {
      double term = (m + 1.0) / ((m + 2.0) * (m + 3.0)) * up;
      s += term;
      if (term < 1e-18) break;
      up *= u;
    }
    return s;
  }
  double omz = 1 - z;
  return -(2 * omz + (1 + z) * std::log(z)) / (omz * omz * omz);
}

double integrand(double z) {
  double a = std::asin(std::sqrt(z));
  return kernel(z) * a * a;
}

double apply_rule(const GaussRule& r, double a, double b) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * integrand(mid + half * r.x[i]);
  return s * half;
}

}  // namespace

double variance_quadrature() {
  static const GaussRule low = legendre_rule(7);
  static const GaussRule high = legendre_rule(15);

  struct Seg {
    double a, b;
  };
  std::vector<Seg> todo{{0.0, 1.0}};
  double total = 0;
  int processed = 0;
  while (!todo.empty()) {
    if (++processed > 100000) throw QuadratureNonConvergence();
    Seg s = todo.back();
    todo.pop_back();
    double g7 = apply_rule(low, s.a, s.b);
    double g15 = apply_rule(high, s.a, s.b);
    if (std::abs(g15 - g7) <= 1e-11 * (s.b - s.a)) {
      total += g15;
    } else {
      double mid = 0.5 * (s.a + s.b);
      todo.push_back({s.a, mid});
      todo.push_back({mid, s.b});
    }
  }
  return total;
}

ConvergenceTable convergence_report(const std::vector<int>& Ns, Ensemble e, int k,
                                    MomentSource source, int threads) {
  ConvergenceTable tab;
  tab.flagged = false;
  for (int N : Ns) {
    MomentResult mr = source == MomentSource::Dp ? exact_moment_dp(N, e, k)
                                                 : exact_moment_closedform(N, e, k, threads);
    ConvergenceRow row;
    row.N = N;
    row.rescaled = mr.rescaled;
    row.constant = predicted_constants(e, k);
    row.deviation = row.rescaled - row.constant;
    double lN = std::log(static_cast<double>(N));
    row.normalized =
        N >= 2 ? row.deviation * std::sqrt(static_cast<double>(N)) / (k == 1 ? lN : lN * lN) : 0;
    tab.rows.push_back(row);
  }
  if (tab.rows.size() >= 2) {
    int nmax = tab.rows.back().N;
    double lo = 0, hi = 0;
    int cnt = 0;
    for (const ConvergenceRow& r : tab.rows) {
      if (10LL * r.N < nmax) continue;
      double a = std::abs(r.normalized);
      if (cnt == 0) {
        lo = hi = a;
      } else {
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
      ++cnt;
    }
    if (cnt >= 2 && hi > 10 * lo) tab.flagged = true;
  }
  return tab;
}

}  // namespace dyck
