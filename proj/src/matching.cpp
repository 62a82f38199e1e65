#include "dyckmatch/matching.hpp"

#include <algorithm>
#include <cmath>

namespace dyck {

namespace {

// Merged point order: position -> (color, within-color index), all 0-based.
struct PointLayout {
  std::vector<int> color;      // +1 / -1 per position
  std::vector<int> which;      // within-color index per position
  std::vector<int> white_pos;  // color index -> position
  std::vector<int> black_pos;
};

PointLayout layout_of(const SignPath& p) {
  PointLayout L;
  L.color.assign(p.begin(), p.end());
  L.which.resize(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 1) {
      L.which[i] = static_cast<int>(L.white_pos.size());
      L.white_pos.push_back(static_cast<int>(i));
    } else {
      L.which[i] = static_cast<int>(L.black_pos.size());
      L.black_pos.push_back(static_cast<int>(i));
    }
  }
  return L;
}

// partner[pos] for the matching, positions 0-based
std::vector<int> partner_positions(const PointLayout& L, const Matching& m) {
  size_t n = L.white_pos.size();
  if (m.perm.size() != n || L.black_pos.size() != n) throw SizeMismatch();
  std::vector<int> partner(2 * n);
  for (size_t i = 0; i < n; ++i) {
    int bp = m.perm[i];
    if (bp < 0 || static_cast<size_t>(bp) >= n) throw IndexOutOfRange("matching target out of range");
    partner[L.white_pos[i]] = L.black_pos[bp];
    partner[L.black_pos[bp]] = L.white_pos[i];
  }
  return partner;
}

// Fenwick tree over positions with select-by-rank via binary lifting.
// reset() keeps the buffer, so a reused tree allocates nothing.
class OrderStats {
 public:
  void reset(int n) {
    n_ = n;
    log2_ = 0;
    while ((1 << (log2_ + 1)) <= n_) ++log2_;
    tree_.assign(n + 1, 0);
  }
  void add(int pos, int delta) {  // pos 1-based
    for (; pos <= n_; pos += pos & -pos) tree_[pos] += delta;
  }
  // 1-based position of the k-th smallest present element, k >= 1
  int select(long long k) const {
    int pos = 0;
    for (int b = log2_; b >= 0; --b) {
      int nxt = pos + (1 << b);
      if (nxt <= n_ && tree_[nxt] < k) {
        pos = nxt;
        k -= tree_[nxt];
      }
    }
    return pos + 1;
  }

 private:
  int n_ = 0, log2_ = 0;
  std::vector<int> tree_;
};

// Scratch for decode_mth, reused across calls: sweeps over m = 1..Z sit in
// tight loops, so the decoder must not allocate per call.
struct DecodeWork {
  std::vector<long long> radices;
  std::vector<long long> digit;
  std::vector<int> which;
  OrderStats open;
};

// hbar at the closing steps equals |height before the step|. Accumulates Z in
// native arithmetic on the side; returns false once that overflows.
bool closing_radices(const SignPath& p, std::vector<long long>& radices,
                     unsigned long long& z) {
  radices.clear();
  z = 1;
  bool native = true;
  long long y = 0;
  for (int s : p) {
    if ((s < 0 && y > 0) || (s > 0 && y < 0)) {
      long long h = y > 0 ? y : -y;
      radices.push_back(h);
      if (native)
        native = !__builtin_mul_overflow(z, static_cast<unsigned long long>(h), &z);
    }
    y += s;
  }
  return native;
}

}  // namespace

double cost(const Instance& inst, const Matching& m) {
  size_t n = inst.whites.size();
  if (inst.blacks.size() != n || m.perm.size() != n) throw SizeMismatch();
  double total = 0;
  for (size_t i = 0; i < n; ++i) total += std::fabs(inst.whites[i] - inst.blacks[m.perm[i]]);
  return total;
}

std::vector<int> k_pi_profile(const Instance& inst, const Matching& m) {
  SignPath p = from_instance(inst);
  PointLayout L = layout_of(p);
  std::vector<int> partner = partner_positions(L, m);
  int n2 = static_cast<int>(p.size());
  // difference array over the n2+1 gaps; link (a,b) covers gaps a+1..b
  std::vector<int> diff(n2 + 2, 0);
  for (int pos = 0; pos < n2; ++pos) {
    int q = partner[pos];
    if (q > pos) {
      diff[pos + 1] += 1;
      diff[q + 1] -= 1;
    }
  }
  std::vector<int> profile(n2 + 1);
  int run = 0;
  for (int g = 0; g <= n2; ++g) {
    run += diff[g];
    profile[g] = run;
  }
  return profile;
}

std::vector<int> k_lb_profile(const Instance& inst) {
  SignPath p = from_instance(inst);
  std::vector<int> profile(p.size() + 1);
  long long sum = 0;
  profile[0] = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    sum += p[i];
    profile[i + 1] = static_cast<int>(std::llabs(sum));
  }
  return profile;
}

double h_lb(const Instance& inst) {
  size_t n = inst.whites.size();
  if (inst.blacks.size() != n) throw SizeMismatch();
  double total = 0;
  for (size_t i = 0; i < n; ++i) total += std::fabs(inst.whites[i] - inst.blacks[i]);
  return total;
}

std::vector<std::pair<int, int>> stack_at(const SignPath& p, const Matching& m, int i) {
  require_signpath(p);
  if (i < 1 || static_cast<size_t>(i) > p.size()) throw IndexOutOfRange("stack position out of range");
  PointLayout L = layout_of(p);
  std::vector<int> partner = partner_positions(L, m);
  std::vector<std::pair<int, int>> out;
  for (int pos = 0; pos < i; ++pos)
    if (partner[pos] >= i) out.push_back({pos + 1, p[pos]});
  return out;
}

bool is_optimal(const SignPath& p, const Matching& m) {
  thread_local std::vector<int> white_pos, black_pos, partner;
  white_pos.clear();
  black_pos.clear();
  for (size_t i = 0; i < p.size(); ++i)
    (p[i] == 1 ? white_pos : black_pos).push_back(static_cast<int>(i));
  size_t n = white_pos.size();
  if (m.perm.size() != n || black_pos.size() != n) throw SizeMismatch();
  partner.assign(p.size(), 0);
  for (size_t i = 0; i < n; ++i) {
    int bp = m.perm[i];
    if (bp < 0 || static_cast<size_t>(bp) >= n) throw IndexOutOfRange("matching target out of range");
    partner[white_pos[i]] = black_pos[bp];
    partner[black_pos[bp]] = white_pos[i];
  }
  int open_w = 0, open_b = 0;
  for (size_t pos = 0; pos < p.size(); ++pos) {
    int q = partner[pos];
    if (q > static_cast<int>(pos)) {
      (p[pos] == 1 ? open_w : open_b)++;
    } else {
      (p[q] == 1 ? open_w : open_b)--;
    }
    if (open_w > 0 && open_b > 0) return false;
  }
  return true;
}

OptimalFamily count_optimal(const SignPath& p) {
  if (!is_bridge(p)) throw NotABridge();
  OptimalFamily fam;
  fam.path = p;
  for (const ClosingStep& c : closing_steps(p)) fam.radices.push_back(c.hbar);
  fam.Z = 1;
  for (long long r : fam.radices) fam.Z *= r;
  return fam;
}

double entropy(const SignPath& p) {
  if (!is_bridge(p)) throw NotABridge();
  double S = 0;
  long long y = 0;
  for (int s : p) {
    if (s < 0 && y > 0)
      S += std::log(static_cast<double>(y));
    else if (s > 0 && y < 0)
      S += std::log(static_cast<double>(-y));
    y += s;
  }
  return S;
}

Matching decode_mth(const SignPath& p, const bigint& m) {
  if (!is_bridge(p)) throw NotABridge();
  thread_local DecodeWork w;

  unsigned long long zn = 0;
  bool native = closing_radices(p, w.radices, zn);
  size_t nclose = w.radices.size();
  w.digit.resize(nclose);
  if (native) {
    if (m < 1 || m > zn) throw IndexOutOfRange("matching index outside 1..Z");
    bigint m0 = m - 1;
    unsigned long long r = m0.convert_to<unsigned long long>();
    for (size_t j = 0; j < nclose; ++j) {
      unsigned long long rad = static_cast<unsigned long long>(w.radices[j]);
      w.digit[j] = static_cast<long long>(r % rad);
      r /= rad;
    }
  } else {
    bigint Z = 1;
    for (long long rad : w.radices) Z *= rad;
    if (m < 1 || m > Z) throw IndexOutOfRange("matching index outside 1..Z");
    bigint r = m - 1;
    for (size_t j = 0; j < nclose; ++j) {
      bigint q = r / w.radices[j];
      w.digit[j] = static_cast<long long>(r - q * w.radices[j]);
      r = q;
    }
  }

  int n2 = static_cast<int>(p.size());
  w.which.resize(n2);
  w.open.reset(n2);
  Matching out;
  out.perm.assign(n2 / 2, -1);

  long long y = 0;
  size_t j = 0;
  int wc = 0, bc = 0;
  for (int t = 0; t < n2; ++t) {
    w.which[t] = p[t] == 1 ? wc++ : bc++;
    bool closing = (p[t] < 0 && y > 0) || (p[t] > 0 && y < 0);
    if (!closing) {
      w.open.add(t + 1, +1);
    } else {
      // the open set holds exactly hbar_t positions, all of the opposite color
      int q = w.open.select(w.digit[j] + 1) - 1;
      w.open.add(q + 1, -1);
      ++j;
      int wpos = p[t] == 1 ? t : q;
      int bpos = p[t] == 1 ? q : t;
      out.perm[w.which[wpos]] = w.which[bpos];
    }
    y += p[t];
  }
  return out;
}

OptimalEnumerator::OptimalEnumerator(const SignPath& p) : fam_(count_optimal(p)), m_(1) {}

bool OptimalEnumerator::next(Matching& out) {
  if (m_ > fam_.Z) return false;
  out = decode_mth(fam_.path, m_);
  ++m_;
  return true;
}

}  // namespace dyck
