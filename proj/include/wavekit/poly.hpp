#pragma once

// Multivariate polynomial with complex coefficients. Backs the built-in symbol
// catalog and the exact differential-operator composition oracle: derivatives
// and products are exact, so symbol identities can be checked to rounding.

#include <map>
#include <vector>

#include "wavekit/common.hpp"
#include "wavekit/multiindex.hpp"

namespace wavekit {

class Poly {
 public:
  explicit Poly(int nvars = 1) : nvars_(nvars) {}

  static Poly constant(int nvars, Cplx c) {
    Poly p(nvars);
    if (c != 0.0) p.terms_[mi_zero(nvars)] = c;
    return p;
  }

  static Poly variable(int nvars, int idx) {
    Poly p(nvars);
    p.terms_[mi_unit(nvars, idx)] = 1.0;
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<MultiIndex, Cplx>& terms() const { return terms_; }

  Poly& add_term(const MultiIndex& e, Cplx c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (c != 0.0) terms_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0.0) terms_.erase(it);
    }
    return *this;
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly c(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) c.add_term(mi_add(ea, eb), ca * cb);
    return c;
  }

  friend Poly operator*(Cplx s, const Poly& a) {
    Poly c(a.nvars_);
    for (const auto& [e, v] : a.terms_) c.add_term(e, s * v);
    return c;
  }

  Poly derivative(int var) const {
    Poly d(nvars_);
    for (const auto& [e, c] : terms_) {
      const int p = e[static_cast<std::size_t>(var)];
      if (p == 0) continue;
      MultiIndex f = e;
      f[static_cast<std::size_t>(var)] = p - 1;
      d.add_term(f, c * static_cast<double>(p));
    }
    return d;
  }

  // repeated derivative per multi-index over all variables
  Poly derivative(const MultiIndex& mi) const {
    Poly d = *this;
    for (std::size_t v = 0; v < mi.size(); ++v)
      for (int r = 0; r < mi[v]; ++r) d = d.derivative(static_cast<int>(v));
    return d;
  }

  Cplx eval(const Vec& vals) const {
    Cplx s = 0.0;
    for (const auto& [e, c] : terms_) {
      Cplx t = c;
      for (std::size_t v = 0; v < e.size(); ++v)
        for (int r = 0; r < e[v]; ++r) t *= vals[v];
      s += t;
    }
    return s;
  }

  int degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      (void)c;
      d = std::max(d, e[static_cast<std::size_t>(var)]);
    }
    return d;
  }

 private:
  int nvars_;
  std::map<MultiIndex, Cplx> terms_;
};

}  // namespace wavekit
