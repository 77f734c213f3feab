#pragma once

// Dense complex matrix of dimension n <= 3 with value semantics. Covers scalar
// symbols (n=1) and EM polarization blocks (n=2,3); fixed storage, no heap.

#include <array>
#include <cmath>
#include <cstdlib>

#include "wavekit/common.hpp"
#include "wavekit/errors.hpp"

namespace wavekit {

class CMat {
 public:
  static constexpr int kMaxDim = 3;

  CMat() : n_(1) {}
  explicit CMat(int n) : n_(n) {
    if (n < 1 || n > kMaxDim) throw Error("CMat: dimension must be 1..3");
  }

  static CMat scalar(Cplx v) {
    CMat m(1);
    m.at(0, 0) = v;
    return m;
  }
  static CMat identity(int n) {
    CMat m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  int dim() const { return n_; }

  Cplx& at(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  const Cplx& at(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

  bool is_scalar() const { return n_ == 1; }
  Cplx scalar_value() const {
    if (n_ != 1) throw Error("CMat: scalar_value on non-scalar matrix");
    return a_[0];
  }

  CMat& operator+=(const CMat& o) {
    check_dim(o);
    for (int i = 0; i < n_ * n_; ++i) a_[static_cast<std::size_t>(i)] += o.a_[static_cast<std::size_t>(i)];
    return *this;
  }
  CMat& operator-=(const CMat& o) {
    check_dim(o);
    for (int i = 0; i < n_ * n_; ++i) a_[static_cast<std::size_t>(i)] -= o.a_[static_cast<std::size_t>(i)];
    return *this;
  }
  CMat& operator*=(Cplx s) {
    for (int i = 0; i < n_ * n_; ++i) a_[static_cast<std::size_t>(i)] *= s;
    return *this;
  }

  friend CMat operator+(CMat a, const CMat& b) { return a += b; }
  friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
  friend CMat operator*(Cplx s, CMat a) { return a *= s; }

  friend CMat operator*(const CMat& a, const CMat& b) {
    a.check_dim(b);
    CMat c(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        const Cplx aik = a.at(i, k);
        if (aik == 0.0) continue;
        for (int j = 0; j < a.n_; ++j) c.at(i, j) += aik * b.at(k, j);
      }
    return c;
  }

  CMat adjoint() const {
    CMat c(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) c.at(i, j) = std::conj(at(j, i));
    return c;
  }

  double fro_norm() const {
    double s = 0.0;
    for (int i = 0; i < n_ * n_; ++i) s += std::norm(a_[static_cast<std::size_t>(i)]);
    return std::sqrt(s);
  }

  double max_abs() const {
    double s = 0.0;
    for (int i = 0; i < n_ * n_; ++i) s = std::max(s, std::abs(a_[static_cast<std::size_t>(i)]));
    return s;
  }

 private:
  void check_dim(const CMat& o) const {
    if (o.n_ != n_) throw Error("CMat: dimension mismatch");
  }

  int n_;
  std::array<Cplx, kMaxDim * kMaxDim> a_{};
};

// e† M e contraction with a unit polarization vector.
inline Cplx sandwich(const CVec& e, const CMat& m) {
  Cplx s = 0.0;
  const int n = m.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += std::conj(e[static_cast<std::size_t>(i)]) * m.at(i, j) * e[static_cast<std::size_t>(j)];
  return s;
}

}  // namespace wavekit
