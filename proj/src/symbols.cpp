#include "wavekit/symbols.hpp"

#include <cmath>

namespace wavekit {

namespace {

// nested central differences over (k, x, x')
CMat fd_deriv2_rec(const Eval2Fn& f, MultiIndex dk, MultiIndex dx, MultiIndex dxp, Vec k, Vec x,
                   Vec xp, int total) {
  for (std::size_t i = 0; i < dk.size(); ++i) {
    if (dk[i] > 0) {
      dk[i] -= 1;
      const double h = detail::fd_step(k[i], total);
      Vec kp = k, km = k;
      kp[i] += h;
      km[i] -= h;
      return (1.0 / (2.0 * h)) * (fd_deriv2_rec(f, dk, dx, dxp, kp, x, xp, total) -
                                  fd_deriv2_rec(f, dk, dx, dxp, km, x, xp, total));
    }
  }
  for (std::size_t i = 0; i < dx.size(); ++i) {
    if (dx[i] > 0) {
      dx[i] -= 1;
      const double h = detail::fd_step(x[i], total);
      Vec hi = x, lo = x;
      hi[i] += h;
      lo[i] -= h;
      return (1.0 / (2.0 * h)) * (fd_deriv2_rec(f, dk, dx, dxp, k, hi, xp, total) -
                                  fd_deriv2_rec(f, dk, dx, dxp, k, lo, xp, total));
    }
  }
  for (std::size_t i = 0; i < dxp.size(); ++i) {
    if (dxp[i] > 0) {
      dxp[i] -= 1;
      const double h = detail::fd_step(xp[i], total);
      Vec hi = xp, lo = xp;
      hi[i] += h;
      lo[i] -= h;
      return (1.0 / (2.0 * h)) * (fd_deriv2_rec(f, dk, dx, dxp, k, x, hi, total) -
                                  fd_deriv2_rec(f, dk, dx, dxp, k, x, lo, total));
    }
  }
  return f(k, x, xp);
}

CMat fd_deriv2(const Eval2Fn& f, const MultiIndex& dk, const MultiIndex& dx, const MultiIndex& dxp,
               const Vec& k, const Vec& x, const Vec& xp) {
  return fd_deriv2_rec(f, dk, dx, dxp, k, x, xp, mi_order(dk) + mi_order(dx) + mi_order(dxp));
}

double int_pow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;  // 0^0 = 1 by the empty product
}

// grading components of a symbol treated as a list; ungraded symbols act as a
// single level-0 component
std::vector<SymField> components_of(const ReducedSymbol& s) {
  if (s.has_grading()) return s.grading();
  return {s.field()};
}

SymField sf_zero(int dim, int mat) {
  return sf_constant(dim, CMat(mat));
}

SymField sf_sum(std::vector<SymField> parts, int dim, int mat) {
  if (parts.empty()) return sf_zero(dim, mat);
  return SymField{dim, mat,
                  [parts = std::move(parts), mat](const MultiIndex& dk, const MultiIndex& dx,
                                                  const Vec& k, const Vec& x) {
                    CMat acc(mat);
                    for (const SymField& p : parts) acc += p.d(dk, dx, k, x);
                    return acc;
                  }};
}

// one term of the left product rule at level l:
//   (-i)^l sum_{|a|=l} (1/a!) d_k^a f . d_x^a g
// with derivative forwarding by the Leibniz rule.
SymField left_rule_term(const SymField& f, const SymField& g, int level) {
  const int dim = f.dim;
  const int mat = std::max(f.mat, g.mat);
  auto alphas = mi_compositions(level, dim);
  const Cplx pref = ipow(-level);  // (-i)^l = i^(-l)
  return SymField{dim, mat,
                  [f, g, alphas, pref, mat](const MultiIndex& dk, const MultiIndex& dx,
                                            const Vec& k, const Vec& x) {
                    CMat acc(mat);
                    for (const MultiIndex& alpha : alphas) {
                      const double inv_fact = 1.0 / mi_factorial(alpha);
                      mi_for_each_leq(dk, [&](const MultiIndex& bk) {
                        mi_for_each_leq(dx, [&](const MultiIndex& bx) {
                          const double w = mi_binom(dk, bk) * mi_binom(dx, bx) * inv_fact;
                          CMat fa = f.d(mi_add(alpha, bk), bx, k, x);
                          CMat fb = g.d(mi_sub(dk, bk), mi_add(alpha, mi_sub(dx, bx)), k, x);
                          if (fa.dim() == 1 && fb.dim() > 1)
                            acc += (w * fa.scalar_value()) * fb;
                          else if (fb.dim() == 1 && fa.dim() > 1)
                            acc += (w * fb.scalar_value()) * fa;
                          else
                            acc += w * (fa * fb);
                        });
                      });
                    }
                    return pref * acc;
                  }};
}

// {a,b} with matrix products in order: sum_i (d_x a d_k b - d_k a d_x b)
// reduces to the paper's d_x a d_k b - d_x b d_k a for scalars
SymField bracket_field(const SymField& a, const SymField& b) {
  const int dim = a.dim;
  const int mat = std::max(a.mat, b.mat);
  std::vector<SymField> parts;
  for (int i = 0; i < dim; ++i) {
    const MultiIndex ei = mi_unit(dim, i);
    const MultiIndex z = mi_zero(dim);
    SymField ax = sf_deriv_field(a, z, ei);
    SymField bk = sf_deriv_field(b, ei, z);
    SymField ak = sf_deriv_field(a, ei, z);
    SymField bx = sf_deriv_field(b, z, ei);
    parts.push_back(sf_sub(sf_mul(ax, bk), sf_mul(ak, bx)));
  }
  return sf_sum(std::move(parts), dim, mat);
}

}  // namespace

// ---------------------------------------------------------------------------

TwoPointSymbol TwoPointSymbol::from_eval(int dim, int mat, double order, double scale, Eval2Fn f) {
  return TwoPointSymbol(dim, mat, order, scale,
                        [f = std::move(f)](const MultiIndex& dk, const MultiIndex& dx,
                                           const MultiIndex& dxp, const Vec& k, const Vec& x,
                                           const Vec& xp) {
                          return fd_deriv2(f, dk, dx, dxp, k, x, xp);
                        });
}

TwoPointSymbol TwoPointSymbol::from_poly(int dim, double order, double scale, const Poly& p) {
  if (p.nvars() != 3 * dim) throw Error("TwoPointSymbol::from_poly: needs 3N variables");
  return TwoPointSymbol(dim, 1, order, scale,
                        [p](const MultiIndex& dk, const MultiIndex& dx, const MultiIndex& dxp,
                            const Vec& k, const Vec& x, const Vec& xp) {
                          MultiIndex full = dk;
                          full.insert(full.end(), dx.begin(), dx.end());
                          full.insert(full.end(), dxp.begin(), dxp.end());
                          Vec vals = k;
                          vals.insert(vals.end(), x.begin(), x.end());
                          vals.insert(vals.end(), xp.begin(), xp.end());
                          return CMat::scalar(p.derivative(full).eval(vals));
                        });
}

ReducedSymbol::ReducedSymbol(double order, double scale, double q, double p,
                             std::vector<SymField> grading)
    : order_(order), scale_(scale), q_(q), p_(1.0 - q),
      truncation_(static_cast<int>(grading.size())), fn_(), grading_(std::move(grading)) {
  check_form(q, p);
  if (grading_.empty()) throw Error("ReducedSymbol: graded constructor needs components");
  fn_ = sf_sum(grading_, grading_.front().dim, grading_.front().mat);
}

// ---------------------------------------------------------------------------
// reduce_symbol

ReducedSymbol reduce_symbol(const TwoPointSymbol& d, double q, double p, int terms) {
  if (std::abs(q + p - 1.0) > 1e-12) throw FormError("reduce_symbol: q + p must equal 1");
  if (terms < 1) throw Error("reduce_symbol: terms must be >= 1");
  const int dim = d.dim();
  const int mat = d.mat();

  // term l: sum over |alpha| = l of (i^l / alpha!) d_k^alpha d_s^alpha
  // dtilde(k, x, 0) with d_s = p d_x - q d_x'. A derivative request (dk', dx')
  // on the term adds dk' to the k-index and distributes dx' over (x, x') by
  // the chain rule at coincident points.
  std::vector<SymField> grading;
  for (int l = 0; l < terms; ++l) {
    auto alphas = mi_compositions(l, dim);
    const Cplx il = ipow(l);
    SymField term{dim, mat,
                  [d, alphas, il, p, q, dim, mat](const MultiIndex& dkr, const MultiIndex& dxr,
                                                  const Vec& k, const Vec& x) {
                    CMat acc(mat);
                    for (const MultiIndex& alpha : alphas) {
                      const double inv_fact = 1.0 / mi_factorial(alpha);
                      mi_for_each_leq(alpha, [&](const MultiIndex& gamma) {
                        const double w_s = mi_binom(alpha, gamma) *
                                           int_pow(p, mi_order(gamma)) *
                                           int_pow(-q, mi_order(alpha) - mi_order(gamma));
                        if (w_s == 0.0) return;
                        mi_for_each_leq(dxr, [&](const MultiIndex& mu) {
                          const double w_c = mi_binom(dxr, mu);
                          CMat v = d.deriv(mi_add(alpha, dkr), mi_add(gamma, mu),
                                           mi_add(mi_sub(alpha, gamma), mi_sub(dxr, mu)), k, x, x);
                          acc += (w_s * w_c * inv_fact) * v;
                        });
                      });
                    }
                    (void)dim;
                    return il * acc;
                  }};
    grading.push_back(std::move(term));
  }
  return ReducedSymbol(d.order(), d.scale(), q, p, std::move(grading));
}

namespace {
double int_pow_checked(double base, int e) { return int_pow(base, e); }
}  // namespace

ReducedSymbol convert_form(const ReducedSymbol& a, double q2, double p2, int terms) {
  if (std::abs(q2 + p2 - 1.0) > 1e-12) throw FormError("convert_form: q' + p' must equal 1");
  const double q = a.q(), p = a.p();
  const int dim = a.dim();
  // view a^(q,p)(k, qx + px') as a two-point symbol; chain rule gives
  // d_x^g d_x'^h -> q^|g| p^|h| a^(g+h)
  TwoPointSymbol two(dim, a.mat(), a.order(), a.scale(),
                     [a, q, p, dim](const MultiIndex& dk, const MultiIndex& dx,
                                    const MultiIndex& dxp, const Vec& k, const Vec& x,
                                    const Vec& xp) {
                       Vec r(static_cast<std::size_t>(dim));
                       for (int i = 0; i < dim; ++i)
                         r[static_cast<std::size_t>(i)] =
                             q * x[static_cast<std::size_t>(i)] + p * xp[static_cast<std::size_t>(i)];
                       const double w =
                           int_pow_checked(q, mi_order(dx)) * int_pow_checked(p, mi_order(dxp));
                       if (w == 0.0) return CMat(a.mat());
                       return w * a.deriv(dk, mi_add(dx, dxp), k, r);
                     });
  return reduce_symbol(two, q2, p2, terms);
}

// ---------------------------------------------------------------------------
// composition rules

ReducedSymbol compose_left(const ReducedSymbol& a, const ReducedSymbol& b, int terms) {
  if (!a.is_left_form() || !b.is_left_form())
    throw FormError("compose_left: both symbols must be in left form");
  if (terms < 1) throw Error("compose_left: terms must be >= 1");
  const int dim = a.dim();
  const int mat = std::max(a.mat(), b.mat());

  const auto ca = components_of(a);
  const auto cb = components_of(b);

  // combined level n collects rule level l against grading levels ia, ib with
  // l + ia + ib = n, keeping the output graded by decreasing order
  std::vector<SymField> grading;
  for (int n = 0; n < terms; ++n) {
    std::vector<SymField> parts;
    for (int l = 0; l <= n; ++l)
      for (std::size_t ia = 0; ia < ca.size(); ++ia)
        for (std::size_t ib = 0; ib < cb.size(); ++ib)
          if (l + static_cast<int>(ia) + static_cast<int>(ib) == n)
            parts.push_back(left_rule_term(ca[ia], cb[ib], l));
    grading.push_back(sf_sum(std::move(parts), dim, mat));
  }
  return ReducedSymbol(a.order() + b.order(), std::min(a.scale(), b.scale()), 1.0, 0.0,
                       std::move(grading));
}

ReducedSymbol compose_weyl(const ReducedSymbol& a, const ReducedSymbol& b, int terms) {
  if (!a.is_weyl_form() || !b.is_weyl_form())
    throw FormError("compose_weyl: both symbols must be in Weyl form");
  if (terms < 1) throw Error("compose_weyl: terms must be >= 1");
  if (terms > 2)
    throw TruncationError("compose_weyl: higher Moyal terms out of scope (terms <= 2)");
  const int dim = a.dim();
  const int mat = std::max(a.mat(), b.mat());

  std::vector<SymField> grading;
  grading.push_back(sf_mul(a.field(), b.field()));
  if (terms == 2) grading.push_back(sf_scale(0.5 * kImag, bracket_field(a.field(), b.field())));
  (void)dim;
  (void)mat;
  return ReducedSymbol(a.order() + b.order(), std::min(a.scale(), b.scale()), 0.5, 0.5,
                       std::move(grading));
}

ReducedSymbol poisson_bracket(const ReducedSymbol& a, const ReducedSymbol& b) {
  if (a.mat() != 1 || b.mat() != 1) throw Error("poisson_bracket: scalar symbols only");
  SymField br = bracket_field(a.field(), b.field());
  return ReducedSymbol(a.order() + b.order() - 1.0, std::min(a.scale(), b.scale()), a.q(), a.p(), 1,
                       std::move(br));
}

std::pair<ReducedSymbol, ReducedSymbol> hermitian_split(const ReducedSymbol& d) {
  ReducedSymbol h(d.order(), d.scale(), d.q(), d.p(), d.truncation(),
                  sf_hermitian_part(d.field()));
  ReducedSymbol a(d.order(), d.scale(), d.q(), d.p(), d.truncation(),
                  sf_antihermitian_part(d.field()));
  return {std::move(h), std::move(a)};
}

// ---------------------------------------------------------------------------
// grid application (left quantization)

GridField apply_operator(const ReducedSymbol& d, const GridField& psi) {
  if (!d.is_left_form()) throw FormError("apply_operator: left-form symbol required");
  if (d.mat() != 1) throw Error("apply_operator: scalar overload called with matrix symbol");
  if (d.dim() != 1) throw Error("apply_operator: grids are one-dimensional");
  require_boundary_decay(psi);

  const int m = psi.size();
  std::vector<Cplx> spec = psi.samples;
  fft_pow2(spec, false);
  const auto ks = fft_wavenumbers(m, psi.dx);

  // plane-wave coefficients against e^{ikx} on the physical grid
  for (int i = 0; i < m; ++i) {
    const double ph = -ks[static_cast<std::size_t>(i)] * psi.x_min;
    spec[static_cast<std::size_t>(i)] *= Cplx(std::cos(ph), std::sin(ph)) / static_cast<double>(m);
  }

  GridField out = GridField::zeros(m, psi.x_min, psi.dx, psi.time);
  Vec kv(1), xv(1);
  std::vector<Cplx> dvals(static_cast<std::size_t>(m));
  std::vector<Cplx> phase(static_cast<std::size_t>(m));
  std::vector<Cplx> rot(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double k = ks[static_cast<std::size_t>(i)];
    phase[static_cast<std::size_t>(i)] = Cplx(std::cos(k * psi.x_min), std::sin(k * psi.x_min));
    rot[static_cast<std::size_t>(i)] = Cplx(std::cos(k * psi.dx), std::sin(k * psi.dx));
  }
  for (int j = 0; j < m; ++j) {
    xv[0] = psi.x_at(j);
    Cplx acc = 0.0;
    for (int i = 0; i < m; ++i) {
      kv[0] = ks[static_cast<std::size_t>(i)];
      acc += d.eval(kv, xv).scalar_value() * spec[static_cast<std::size_t>(i)] *
             phase[static_cast<std::size_t>(i)];
      phase[static_cast<std::size_t>(i)] *= rot[static_cast<std::size_t>(i)];
    }
    out.samples[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

std::vector<GridField> apply_operator(const ReducedSymbol& d, const std::vector<GridField>& psi) {
  const int n = d.mat();
  if (static_cast<int>(psi.size()) != n)
    throw Error("apply_operator: stacked field count must match matrix dimension");
  if (!d.is_left_form()) throw FormError("apply_operator: left-form symbol required");
  for (const auto& f : psi) require_boundary_decay(f);

  const int m = psi.front().size();
  const auto ks = fft_wavenumbers(m, psi.front().dx);
  const double x_min = psi.front().x_min;
  const double dx = psi.front().dx;
  for (const auto& f : psi)
    if (f.size() != m || f.x_min != x_min || f.dx != dx)
      throw GridError("apply_operator: stacked fields must share one grid");

  std::vector<std::vector<Cplx>> spec(psi.size());
  for (std::size_t c = 0; c < psi.size(); ++c) {
    spec[c] = psi[c].samples;
    fft_pow2(spec[c], false);
    for (int i = 0; i < m; ++i) {
      const double ph = -ks[static_cast<std::size_t>(i)] * x_min;
      spec[c][static_cast<std::size_t>(i)] *= Cplx(std::cos(ph), std::sin(ph)) / static_cast<double>(m);
    }
  }

  std::vector<GridField> out(psi.size());
  for (std::size_t c = 0; c < psi.size(); ++c) out[c] = GridField::zeros(m, x_min, dx, psi.front().time);

  Vec kv(1), xv(1);
  for (int j = 0; j < m; ++j) {
    xv[0] = x_min + dx * j;
    std::vector<Cplx> acc(psi.size(), Cplx{0.0, 0.0});
    for (int i = 0; i < m; ++i) {
      kv[0] = ks[static_cast<std::size_t>(i)];
      const double ph = kv[0] * xv[0];
      const Cplx e(std::cos(ph), std::sin(ph));
      const CMat dm = d.eval(kv, xv);
      for (int r = 0; r < n; ++r) {
        Cplx s = 0.0;
        for (int cidx = 0; cidx < n; ++cidx)
          s += dm.at(r, cidx) * spec[static_cast<std::size_t>(cidx)][static_cast<std::size_t>(i)];
        acc[static_cast<std::size_t>(r)] += s * e;
      }
    }
    for (int r = 0; r < n; ++r) out[static_cast<std::size_t>(r)].samples[static_cast<std::size_t>(j)] = acc[static_cast<std::size_t>(r)];
  }
  return out;
}

}  // namespace wavekit
