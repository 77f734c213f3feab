#pragma once

// Matrix-valued phase-space functions with a derivative oracle. A SymField
// answers arbitrary mixed partials through one callback; combinators (sum,
// product, reciprocal, Hermitian split) forward derivatives exactly, so any
// expression built from analytic leaves stays analytic. Leaves without
// closed-form derivatives fall back to central differences with step
// h = eps^(1/3) * max(1, |coordinate|) (documented accuracy floor ~1e-6).

#include <functional>
#include <utility>

#include "wavekit/cmat.hpp"
#include "wavekit/common.hpp"
#include "wavekit/errors.hpp"
#include "wavekit/multiindex.hpp"
#include "wavekit/poly.hpp"

namespace wavekit {

using DerivFn = std::function<CMat(const MultiIndex& dk, const MultiIndex& dx,
                                   const Vec& k, const Vec& x)>;
using EvalFn = std::function<CMat(const Vec& k, const Vec& x)>;

struct SymField {
  int dim = 1;  // N: wavevector and position dimension
  int mat = 1;  // matrix dimension n
  DerivFn d;

  CMat eval(const Vec& k, const Vec& x) const { return d(mi_zero(dim), mi_zero(dim), k, x); }
  CMat deriv(const MultiIndex& dk, const MultiIndex& dx, const Vec& k, const Vec& x) const {
    return d(dk, dx, k, x);
  }
};

namespace detail {

// step balancing truncation against rounding for a nested central-difference
// stencil of the given total derivative order
inline double fd_step(double coord, int total_order = 1) {
  constexpr double eps = 2.220446049250313e-16;
  const double base = std::pow(eps, 1.0 / (2.0 + total_order));
  return base * std::max(1.0, std::abs(coord));
}

inline CMat fd_deriv_rec(const EvalFn& f, MultiIndex dk, MultiIndex dx, Vec k, Vec x, int total) {
  for (std::size_t i = 0; i < dk.size(); ++i) {
    if (dk[i] > 0) {
      dk[i] -= 1;
      const double h = fd_step(k[i], total);
      Vec kp = k, km = k;
      kp[i] += h;
      km[i] -= h;
      CMat hi = fd_deriv_rec(f, dk, dx, kp, x, total);
      CMat lo = fd_deriv_rec(f, dk, dx, km, x, total);
      return (1.0 / (2.0 * h)) * (hi - lo);
    }
  }
  for (std::size_t i = 0; i < dx.size(); ++i) {
    if (dx[i] > 0) {
      dx[i] -= 1;
      const double h = fd_step(x[i], total);
      Vec xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      CMat hi = fd_deriv_rec(f, dk, dx, k, xp, total);
      CMat lo = fd_deriv_rec(f, dk, dx, k, xm, total);
      return (1.0 / (2.0 * h)) * (hi - lo);
    }
  }
  return f(k, x);
}

// nested central differences over (k, x)
inline CMat fd_deriv(const EvalFn& f, const MultiIndex& dk, const MultiIndex& dx, const Vec& k,
                     const Vec& x) {
  return fd_deriv_rec(f, dk, dx, k, x, mi_order(dk) + mi_order(dx));
}

}  // namespace detail

inline SymField sf_analytic(int dim, int mat, DerivFn d) { return SymField{dim, mat, std::move(d)}; }

inline SymField sf_numeric(int dim, int mat, EvalFn f) {
  return SymField{dim, mat,
                  [f = std::move(f)](const MultiIndex& dk, const MultiIndex& dx, const Vec& k,
                                     const Vec& x) { return detail::fd_deriv(f, dk, dx, k, x); }};
}

inline SymField sf_constant(int dim, CMat v) {
  const int mat = v.dim();
  return SymField{dim, mat,
                  [v, mat](const MultiIndex& dk, const MultiIndex& dx, const Vec&, const Vec&) {
                    if (mi_order(dk) + mi_order(dx) > 0) return CMat(mat);
                    return v;
                  }};
}

// scalar polynomial in variables (k_0..k_{N-1}, x_0..x_{N-1})
inline SymField sf_poly(int dim, const Poly& p) {
  if (p.nvars() != 2 * dim) throw Error("sf_poly: polynomial must have 2N variables");
  return SymField{dim, 1,
                  [p, dim](const MultiIndex& dk, const MultiIndex& dx, const Vec& k, const Vec& x) {
                    MultiIndex full = dk;
                    full.insert(full.end(), dx.begin(), dx.end());
                    Vec vals = k;
                    vals.insert(vals.end(), x.begin(), x.end());
                    (void)dim;
                    return CMat::scalar(p.derivative(full).eval(vals));
                  }};
}

inline SymField sf_add(const SymField& a, const SymField& b) {
  return SymField{a.dim, a.mat,
                  [a, b](const MultiIndex& dk, const MultiIndex& dx, const Vec& k, const Vec& x) {
                    return a.d(dk, dx, k, x) + b.d(dk, dx, k, x);
                  }};
}

inline SymField sf_sub(const SymField& a, const SymField& b) {
  return SymField{a.dim, a.mat,
                  [a, b](const MultiIndex& dk, const MultiIndex& dx, const Vec& k, const Vec& x) {
                    return a.d(dk, dx, k, x) - b.d(dk, dx, k, x);
                  }};
}

inline SymField sf_scale(Cplx s, const SymField& a) {
  return SymField{a.dim, a.mat,
                  [s, a](const MultiIndex& dk, const MultiIndex& dx, const Vec& k, const Vec& x) {
                    return s * a.d(dk, dx, k, x);
                  }};
}

// matrix product with the Leibniz rule; order a-then-b is preserved
inline SymField sf_mul(const SymField& a, const SymField& b) {
  const int mat = std::max(a.mat, b.mat);
  return SymField{a.dim, mat,
                  [a, b, mat](const MultiIndex& dk, const MultiIndex& dx, const Vec& k, const Vec& x) {
                    CMat out(mat);
                    mi_for_each_leq(dk, [&](const MultiIndex& bk) {
                      mi_for_each_leq(dx, [&](const MultiIndex& bx) {
                        const double w = mi_binom(dk, bk) * mi_binom(dx, bx);
                        CMat fa = a.d(bk, bx, k, x);
                        CMat fb = b.d(mi_sub(dk, bk), mi_sub(dx, bx), k, x);
                        if (fa.dim() == 1 && fb.dim() > 1)
                          out += (w * fa.scalar_value()) * fb;
                        else if (fb.dim() == 1 && fa.dim() > 1)
                          out += (w * fb.scalar_value()) * fa;
                        else
                          out += w * (fa * fb);
                      });
                    });
                    return out;
                  }};
}

// 1/f for scalar fields. Derivatives follow from g*f = 1:
//   g_a = -(1/f) * sum_{0 < b <= a} C(a,b) f_b g_{a-b}
inline SymField sf_recip(const SymField& a, double abs_floor = 0.0) {
  if (a.mat != 1) throw Error("sf_recip: scalar symbols only");
  struct Impl {
    SymField f;
    double floor;
    Cplx deriv(const MultiIndex& dk, const MultiIndex& dx, const Vec& k, const Vec& x) const {
      const Cplx f0 = f.d(mi_zero(f.dim), mi_zero(f.dim), k, x).scalar_value();
      if (std::abs(f0) <= floor) throw ZeroFloorError("sf_recip: division by vanishing symbol");
      if (mi_order(dk) + mi_order(dx) == 0) return 1.0 / f0;
      Cplx acc = 0.0;
      mi_for_each_leq(dk, [&](const MultiIndex& bk) {
        mi_for_each_leq(dx, [&](const MultiIndex& bx) {
          if (mi_order(bk) + mi_order(bx) == 0) return;
          const double w = mi_binom(dk, bk) * mi_binom(dx, bx);
          const Cplx fb = f.d(bk, bx, k, x).scalar_value();
          const Cplx grest = deriv(mi_sub(dk, bk), mi_sub(dx, bx), k, x);
          acc += w * fb * grest;
        });
      });
      return -acc / f0;
    }
  };
  auto impl = std::make_shared<Impl>(Impl{a, abs_floor});
  return SymField{a.dim, 1,
                  [impl](const MultiIndex& dk, const MultiIndex& dx, const Vec& k, const Vec& x) {
                    return CMat::scalar(impl->deriv(dk, dx, k, x));
                  }};
}

// (d + d†)/2 ; derivative commutes with the adjoint for real coordinates
inline SymField sf_hermitian_part(const SymField& a) {
  return SymField{a.dim, a.mat,
                  [a](const MultiIndex& dk, const MultiIndex& dx, const Vec& k, const Vec& x) {
                    CMat m = a.d(dk, dx, k, x);
                    return 0.5 * (m + m.adjoint());
                  }};
}

// (d - d†)/(2i)
inline SymField sf_antihermitian_part(const SymField& a) {
  return SymField{a.dim, a.mat,
                  [a](const MultiIndex& dk, const MultiIndex& dx, const Vec& k, const Vec& x) {
                    CMat m = a.d(dk, dx, k, x);
                    return (1.0 / (2.0 * kImag)) * (m - m.adjoint());
                  }};
}

// shift a derivative request: returns the field dk0,dx0-differentiated
inline SymField sf_deriv_field(const SymField& a, MultiIndex dk0, MultiIndex dx0) {
  return SymField{a.dim, a.mat,
                  [a, dk0 = std::move(dk0), dx0 = std::move(dx0)](const MultiIndex& dk, const MultiIndex& dx,
                                                                  const Vec& k, const Vec& x) {
                    return a.d(mi_add(dk, dk0), mi_add(dx, dx0), k, x);
                  }};
}

}  // namespace wavekit
