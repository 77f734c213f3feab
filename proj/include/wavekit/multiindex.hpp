#pragma once

// Multi-index bookkeeping for symbol derivatives: |alpha|, alpha!, binomials,
// and enumeration of compositions |alpha| = l over a given dimension.

#include <functional>
#include <vector>

#include "wavekit/common.hpp"

namespace wavekit {

using MultiIndex = std::vector<int>;

inline MultiIndex mi_zero(int dims) { return MultiIndex(static_cast<std::size_t>(dims), 0); }

inline MultiIndex mi_unit(int dims, int i) {
  MultiIndex m = mi_zero(dims);
  m[static_cast<std::size_t>(i)] = 1;
  return m;
}

inline int mi_order(const MultiIndex& a) {
  int s = 0;
  for (int v : a) s += v;
  return s;
}

inline double mi_factorial(const MultiIndex& a) {
  double f = 1.0;
  for (int v : a)
    for (int i = 2; i <= v; ++i) f *= i;
  return f;
}

inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// product of per-component binomials C(a_i, b_i); 0 unless b <= a
inline double mi_binom(const MultiIndex& a, const MultiIndex& b) {
  double p = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) p *= binom(a[i], b[i]);
  return p;
}

inline bool mi_leq(const MultiIndex& b, const MultiIndex& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] > a[i]) return false;
  return true;
}

inline MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex c(a);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += b[i];
  return c;
}

inline MultiIndex mi_sub(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex c(a);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] -= b[i];
  return c;
}

// all multi-indices with |alpha| = total over `dims` slots
inline std::vector<MultiIndex> mi_compositions(int total, int dims) {
  std::vector<MultiIndex> out;
  MultiIndex cur = mi_zero(dims);
  std::function<void(int, int)> rec = [&](int slot, int left) {
    if (slot == dims - 1) {
      cur[static_cast<std::size_t>(slot)] = left;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[static_cast<std::size_t>(slot)] = v;
      rec(slot + 1, left - v);
    }
  };
  if (dims == 0) return out;
  rec(0, total);
  return out;
}

// iterate all beta <= alpha (componentwise)
template <class F>
inline void mi_for_each_leq(const MultiIndex& alpha, F&& fn) {
  MultiIndex beta = mi_zero(static_cast<int>(alpha.size()));
  std::function<void(std::size_t)> rec = [&](std::size_t slot) {
    if (slot == alpha.size()) {
      fn(static_cast<const MultiIndex&>(beta));
      return;
    }
    for (int v = 0; v <= alpha[slot]; ++v) {
      beta[slot] = v;
      rec(slot + 1);
    }
  };
  rec(0);
}

// i^l as a complex unit
inline Cplx ipow(int l) {
  switch (((l % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace wavekit
