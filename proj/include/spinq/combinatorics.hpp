#pragma once

#include <cstdint>
#include <vector>

namespace spinq {

// Strictly increasing index tuples (1-based) and the signs that show up when
// merging, complementing and permuting them.
using Indices = std::vector<int>;

// sign of the permutation sorting a into increasing order; 0 if a repeats
inline int sort_sign(Indices& a) {
  int sign = 1;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j) {
      if (a[i] == a[j]) return 0;
      if (a[i] > a[j]) {
        std::swap(a[i], a[j]);
        sign = -sign;
      }
    }
  return sign;
}

// merge two increasing tuples; returns 0 on common index, else the sign of
// the shuffle putting (a,b) in increasing order, writing the result to out
inline int merge_sign(const Indices& a, const Indices& b, Indices& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  int sign = 1;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      // b[j] jumps over the remaining entries of a
      if ((a.size() - i) % 2 == 1) sign = -sign;
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return sign;
}

// complement of an increasing tuple in 1..n, and the sign with
// e^I ^ e^{I^c} = sign * e^{1..n}
inline int complement_sign(const Indices& idx, int n, Indices& comp) {
  comp.clear();
  comp.reserve(n - idx.size());
  size_t j = 0;
  for (int i = 1; i <= n; ++i) {
    if (j < idx.size() && idx[j] == i)
      ++j;
    else
      comp.push_back(i);
  }
  // count inversions between idx and comp in the concatenation (idx, comp)
  int inv = 0;
  for (int a : idx)
    for (int b : comp)
      if (a > b) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

// all increasing k-tuples in 1..n, lexicographic
inline std::vector<Indices> increasing_tuples(int n, int k) {
  std::vector<Indices> out;
  if (k < 0 || k > n) return out;
  Indices cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

inline long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// rank of an increasing tuple among increasing_tuples(n, k), lexicographic
inline long tuple_rank(const Indices& idx, int n) {
  int k = static_cast<int>(idx.size());
  long rank = 0;
  int prev = 0;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < idx[i]; ++v) rank += binomial(n - v, k - 1 - i);
    prev = idx[i];
  }
  return rank;
}

}  // namespace spinq
