#pragma once

// Phase-space symbols of pseudodifferential operators: two-point symbols
// d(k, x, x'), their (q,p)-reduced single-point forms, the left/Weyl product
// rules, Poisson bracket, Hermitian split, and grid-level operator
// application by the left quantization.

#include <memory>
#include <optional>
#include <vector>

#include "wavekit/grid.hpp"
#include "wavekit/symfield.hpp"

namespace wavekit {

// ---------------------------------------------------------------------------
// Two-point symbols

using Deriv2Fn = std::function<CMat(const MultiIndex& dk, const MultiIndex& dx,
                                    const MultiIndex& dxp, const Vec& k, const Vec& x,
                                    const Vec& xp)>;
using Eval2Fn = std::function<CMat(const Vec& k, const Vec& x, const Vec& xp)>;

class TwoPointSymbol {
 public:
  TwoPointSymbol(int dim, int mat, double order, double scale, Deriv2Fn d)
      : dim_(dim), mat_(mat), order_(order), scale_(scale), d_(std::move(d)) {
    if (scale_ <= 0.0) throw Error("TwoPointSymbol: scale L must be positive");
    if (mat_ < 1 || mat_ > CMat::kMaxDim) throw Error("TwoPointSymbol: matrix dim must be 1..3");
  }

  // derivatives by nested central differences of eval
  static TwoPointSymbol from_eval(int dim, int mat, double order, double scale, Eval2Fn f);

  // scalar polynomial in 3N variables ordered (k..., x..., x'...)
  static TwoPointSymbol from_poly(int dim, double order, double scale, const Poly& p);

  int dim() const { return dim_; }
  int mat() const { return mat_; }
  double order() const { return order_; }
  double scale() const { return scale_; }

  CMat eval(const Vec& k, const Vec& x, const Vec& xp) const {
    return d_(mi_zero(dim_), mi_zero(dim_), mi_zero(dim_), k, x, xp);
  }
  CMat deriv(const MultiIndex& dk, const MultiIndex& dx, const MultiIndex& dxp, const Vec& k,
             const Vec& x, const Vec& xp) const {
    return d_(dk, dx, dxp, k, x, xp);
  }
  // spec-shaped access: beta ranges over the 2N coordinates (x, x')
  CMat deriv_z(const MultiIndex& dk, const MultiIndex& beta, const Vec& k, const Vec& x,
               const Vec& xp) const {
    MultiIndex dx(beta.begin(), beta.begin() + dim_);
    MultiIndex dxp(beta.begin() + dim_, beta.end());
    return d_(dk, dx, dxp, k, x, xp);
  }

 private:
  int dim_, mat_;
  double order_, scale_;
  Deriv2Fn d_;
};

// ---------------------------------------------------------------------------
// Reduced (single-point) symbols

class ReducedSymbol {
 public:
  // ungraded
  ReducedSymbol(double order, double scale, double q, double p, int truncation, SymField fn)
      : order_(order), scale_(scale), q_(q), p_(1.0 - q), truncation_(truncation),
        fn_(std::move(fn)) {
    check_form(q, p);
  }

  // graded: component l has declared order `order - l`; eval sums components
  ReducedSymbol(double order, double scale, double q, double p, std::vector<SymField> grading);

  static ReducedSymbol from_poly(int dim, double order, double scale, double q, double p,
                                 const Poly& poly) {
    return ReducedSymbol(order, scale, q, p, 1, sf_poly(dim, poly));
  }

  int dim() const { return fn_.dim; }
  int mat() const { return fn_.mat; }
  double order() const { return order_; }
  double scale() const { return scale_; }
  double q() const { return q_; }
  double p() const { return p_; }
  int truncation() const { return truncation_; }
  bool is_left_form() const { return q_ == 1.0; }
  bool is_weyl_form() const { return q_ == 0.5; }

  const SymField& field() const { return fn_; }
  bool has_grading() const { return !grading_.empty(); }
  const std::vector<SymField>& grading() const { return grading_; }
  double term_order(std::size_t l) const { return order_ - static_cast<double>(l); }

  CMat eval(const Vec& k, const Vec& x) const { return fn_.eval(k, x); }
  CMat deriv(const MultiIndex& dk, const MultiIndex& dx, const Vec& k, const Vec& x) const {
    return fn_.deriv(dk, dx, k, x);
  }
  CMat term_eval(std::size_t l, const Vec& k, const Vec& x) const {
    return grading_.at(l).eval(k, x);
  }

  // same symbol with the grading collapsed into a single component
  ReducedSymbol ungraded() const {
    return ReducedSymbol(order_, scale_, q_, p_, truncation_, fn_);
  }

 private:
  static void check_form(double q, double p) {
    if (std::abs(q + p - 1.0) > 1e-12) throw FormError("ReducedSymbol: q + p must equal 1");
  }

  double order_, scale_;
  double q_, p_;
  int truncation_ = 1;
  SymField fn_;
  std::vector<SymField> grading_;
};

// ---------------------------------------------------------------------------
// Operations

// (q,p)-reduction of a two-point symbol, Taylor expansion in s = x - x' about
// r = qx + px'; term l is sum_{|a|=l} (i^l/a!) d_k^a d_s^a dtilde(k, x, 0).
ReducedSymbol reduce_symbol(const TwoPointSymbol& d, double q, double p, int terms);

// re-express a reduced symbol in another (q', p') form to the stated truncation
ReducedSymbol convert_form(const ReducedSymbol& a, double q2, double p2, int terms);

// left product rule: c ~ sum_l (-i)^l sum_{|a|=l} (1/a!) d_k^a a . d_x^a b
ReducedSymbol compose_left(const ReducedSymbol& a, const ReducedSymbol& b, int terms);

// Weyl product rule truncated after two terms: c ~ ab + (i/2){a,b}
ReducedSymbol compose_weyl(const ReducedSymbol& a, const ReducedSymbol& b, int terms);

// {a,b} = d_x a d_k b - d_x b d_k a (paper sign convention), scalar symbols
ReducedSymbol poisson_bracket(const ReducedSymbol& a, const ReducedSymbol& b);

// d = d_H + i d_A with both parts Hermitian pointwise
std::pair<ReducedSymbol, ReducedSymbol> hermitian_split(const ReducedSymbol& d);

// left quantization on a uniform grid: transform, multiply by d(k,x),
// inverse-transform pointwise in x. Scalar symbols, N = 1.
GridField apply_operator(const ReducedSymbol& d, const GridField& psi);

// matrix symbol acting on stacked fields
std::vector<GridField> apply_operator(const ReducedSymbol& d, const std::vector<GridField>& psi);

}  // namespace wavekit
