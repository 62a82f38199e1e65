#include <cmath>
#include <vector>

#include "dyckmatch/counting.hpp"

// Series arithmetic for the moment generating functions. All series are kept
// in the substitution z -> z/4 (coefficient n divided by 4^n) so that nothing
// overflows en route; the output is unscaled at the end. Radius of convergence
// of everything here is 1/4, so scaled coefficients stay O(1).

namespace dyck {

namespace {

using Series = std::vector<double>;

Series mul(const Series& a, const Series& b) {
  size_t M = a.size() - 1;
  Series r(M + 1, 0.0);
  for (size_t i = 0; i <= M; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; i + j <= M; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Series divs(const Series& a, const Series& b) {
  size_t M = a.size() - 1;
  Series r(M + 1);
  for (size_t n = 0; n <= M; ++n) {
    double s = a[n];
    for (size_t j = 1; j <= n; ++j) s -= b[j] * r[n - j];
    r[n] = s / b[0];
  }
  return r;
}

Series add(Series a, const Series& b, double sign = 1.0) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += sign * b[i];
  return a;
}

}  // namespace

std::vector<double> gf_moment_series(Ensemble e, int k, int order) {
  if (k != 1 && k != 2) throw UnsupportedOrder();
  if (order < 0 || order > 500) throw TooLarge("series order capped at 500");

  // one guard coefficient: division by z below leaves the top coefficient short
  size_t M = static_cast<size_t>(order) + 1;

  Series C(M + 1, 0.0);
  C[0] = 1.0;
  for (size_t n = 1; n <= M; ++n) {
    double s = 0;
    for (size_t i = 0; i < n; ++i) s += C[i] * C[n - 1 - i];
    C[n] = 0.25 * s;
  }
  Series C2 = mul(C, C);
  Series x(M + 1, 0.0);
  for (size_t n = 1; n <= M; ++n) x[n] = 0.25 * C2[n - 1];

  Series one(M + 1, 0.0);
  one[0] = 1.0;
  Series opx = add(one, x);
  Series omx = add(one, x, -1.0);

  // polylog-type series in x: coefficients log h, log^2 h, log(h^2+h) log(h!)
  Series Li01(M + 1, 0.0), Li02(M + 1, 0.0), Llh(M + 1, 0.0);
  Series xp = one;
  double lfact = 0;
  for (size_t h = 1; h <= M; ++h) {
    xp = mul(xp, x);
    double lh = std::log(static_cast<double>(h));
    lfact += lh;
    for (size_t n = h; n <= M; ++n) {
      Li01[n] += lh * xp[n];
      Li02[n] += lh * lh * xp[n];
      Llh[n] += std::log(static_cast<double>(h * h + h)) * lfact * xp[n];
    }
  }

  Series out;
  if (k == 1) {
    if (e == Ensemble::Bridge) {
      // 2 (1+x)/(1-x)^2 Li_{0,1}(x)
      Series num = mul(opx, Li01);
      for (double& v : num) v *= 2;
      out = divs(num, mul(omx, omx));
    } else {
      out = mul(opx, Li01);
    }
  } else {
    Series Li01sq = mul(Li01, Li01);
    if (e == Ensemble::Bridge) {
      Series c1 = divs(mul(opx, Li02), mul(omx, omx));
      // Li^2 / x: shift one power of z, then divide by C(z)^2
      Series shifted(M + 1, 0.0);
      for (size_t n = 0; n < M; ++n) shifted[n] = 4.0 * Li01sq[n + 1];
      Series inner = add(Llh, divs(shifted, C2));
      Series c2 = divs(mul(mul(x, opx), inner), mul(omx, mul(omx, omx)));
      out.assign(M + 1, 0.0);
      for (size_t n = 0; n <= M; ++n) out[n] = 2 * c1[n] + 4 * c2[n];
    } else {
      Series c1 = mul(opx, Li02);
      Series inner = add(Llh, Li01sq, -1.0);
      Series c2 = divs(mul(mul(x, opx), inner), omx);
      out.assign(M + 1, 0.0);
      for (size_t n = 0; n <= M; ++n) out[n] = c1[n] + 2 * c2[n];
    }
  }

  out.resize(static_cast<size_t>(order) + 1);
  for (size_t n = 0; n < out.size(); ++n) out[n] = std::ldexp(out[n], 2 * static_cast<int>(n));
  return out;
}

}  // namespace dyck
