#include "wavekit/dispersion.hpp"

#include <algorithm>
#include <cmath>

namespace wavekit {

namespace {

constexpr double kGradStep = 6.055454452393343e-06;   // eps^(1/3)
constexpr double kHessStep = 1.2207031250000000e-04;  // eps^(1/4)

double step_for(double coord, double base) { return base * std::max(1.0, std::abs(coord)); }

}  // namespace

void DispersionModel::grad(const Vec& k, const Vec& x, Vec& dk, Vec& dx) const {
  if (gradient) {
    gradient(k, x, dk, dx);
    return;
  }
  dk.assign(k.size(), 0.0);
  dx.assign(x.size(), 0.0);
  Vec kp = k, xp = x;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double h = step_for(k[i], kGradStep);
    kp[i] = k[i] + h;
    const double hi = value(kp, x);
    kp[i] = k[i] - h;
    const double lo = value(kp, x);
    kp[i] = k[i];
    dk[i] = (hi - lo) / (2.0 * h);
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = step_for(x[i], kGradStep);
    xp[i] = x[i] + h;
    const double hi = value(k, xp);
    xp[i] = x[i] - h;
    const double lo = value(k, xp);
    xp[i] = x[i];
    dx[i] = (hi - lo) / (2.0 * h);
  }
}

void DispersionModel::hess(const Vec& k, const Vec& x, std::vector<double>& kk,
                           std::vector<double>& kx, std::vector<double>& xx) const {
  if (hessian) {
    hessian(k, x, kk, kx, xx);
    return;
  }
  const std::size_t n = k.size();
  kk.assign(n * n, 0.0);
  kx.assign(n * n, 0.0);
  xx.assign(n * n, 0.0);
  Vec gk_p(n), gx_p(n), gk_m(n), gx_m(n);
  Vec kp = k, xp = x;
  for (std::size_t j = 0; j < n; ++j) {
    const double hk = step_for(k[j], kHessStep);
    kp[j] = k[j] + hk;
    grad(kp, x, gk_p, gx_p);
    kp[j] = k[j] - hk;
    grad(kp, x, gk_m, gx_m);
    kp[j] = k[j];
    for (std::size_t i = 0; i < n; ++i) {
      kk[i * n + j] = (gk_p[i] - gk_m[i]) / (2.0 * hk);
      // d2D/dx_i dk_j enters kx transposed below
    }
    const double hx = step_for(x[j], kHessStep);
    xp[j] = x[j] + hx;
    grad(k, xp, gk_p, gx_p);
    xp[j] = x[j] - hx;
    grad(k, xp, gk_m, gx_m);
    xp[j] = x[j];
    for (std::size_t i = 0; i < n; ++i) {
      kx[i * n + j] = (gk_p[i] - gk_m[i]) / (2.0 * hx);  // d2D/dk_i dx_j
      xx[i * n + j] = (gx_p[i] - gx_m[i]) / (2.0 * hx);
    }
  }
  // symmetrize the diagonal blocks (keeps the variational flow Hamiltonian)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double skk = 0.5 * (kk[i * n + j] + kk[j * n + i]);
      kk[i * n + j] = kk[j * n + i] = skk;
      const double sxx = 0.5 * (xx[i * n + j] + xx[j * n + i]);
      xx[i * n + j] = xx[j * n + i] = sxx;
    }
}

// ---------------------------------------------------------------------------
// eigenmodes

std::vector<double> hermitian_eigenvalues(const CMat& m) {
  const int n = m.dim();
  if (n == 1) return {m.at(0, 0).real()};
  if (n == 2) {
    const double a = m.at(0, 0).real(), d = m.at(1, 1).real();
    const double mid = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m.at(0, 1)));
    return {mid - rad, mid + rad};
  }
  // n == 3: trigonometric closed form on the shifted matrix
  const double q = (m.at(0, 0).real() + m.at(1, 1).real() + m.at(2, 2).real()) / 3.0;
  double p2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double di = m.at(i, i).real() - q;
    p2 += di * di;
  }
  p2 += 2.0 * (std::norm(m.at(0, 1)) + std::norm(m.at(0, 2)) + std::norm(m.at(1, 2)));
  const double p = std::sqrt(std::max(p2 / 6.0, 0.0));
  if (p < 1e-300) return {q, q, q};
  CMat b(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b.at(i, j) = (m.at(i, j) - (i == j ? Cplx(q) : Cplx(0.0))) * (1.0 / p);
  // det(B)/2 for Hermitian B is real
  const Cplx det = b.at(0, 0) * (b.at(1, 1) * b.at(2, 2) - b.at(1, 2) * b.at(2, 1)) -
                   b.at(0, 1) * (b.at(1, 0) * b.at(2, 2) - b.at(1, 2) * b.at(2, 0)) +
                   b.at(0, 2) * (b.at(1, 0) * b.at(2, 1) - b.at(1, 1) * b.at(2, 0));
  const double r = std::clamp(det.real() / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
  const double e2 = 3.0 * q - e1 - e3;
  std::vector<double> ev{e1, e2, e3};
  std::sort(ev.begin(), ev.end());
  return ev;
}

namespace {

CVec null_vector(const CMat& a) {
  // rows of the (numerically) singular matrix; null vector from the complex
  // bilinear cross product of the two most independent rows
  const int n = a.dim();
  if (n == 2) {
    // v bilinear-orthogonal to the larger row of the shifted matrix
    CVec v1{-a.at(0, 1), a.at(0, 0)};
    CVec v2{-a.at(1, 1), a.at(1, 0)};
    const double n1 = std::norm(v1[0]) + std::norm(v1[1]);
    const double n2 = std::norm(v2[0]) + std::norm(v2[1]);
    return n1 >= n2 ? v1 : v2;
  }
  CVec best(3, Cplx{0.0, 0.0});
  double best_norm = -1.0;
  for (int r1 = 0; r1 < 3; ++r1)
    for (int r2 = r1 + 1; r2 < 3; ++r2) {
      CVec c(3);
      c[0] = a.at(r1, 1) * a.at(r2, 2) - a.at(r1, 2) * a.at(r2, 1);
      c[1] = a.at(r1, 2) * a.at(r2, 0) - a.at(r1, 0) * a.at(r2, 2);
      c[2] = a.at(r1, 0) * a.at(r2, 1) - a.at(r1, 1) * a.at(r2, 0);
      const double nn = std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]);
      if (nn > best_norm) {
        best_norm = nn;
        best = c;
      }
    }
  return best;
}

void fix_phase_and_normalize(CVec& v) {
  double norm2 = 0.0;
  std::size_t imax = 0;
  double amax = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    norm2 += a * a;
    if (a > amax) {
      amax = a;
      imax = i;
    }
  }
  const Cplx phase = std::conj(v[imax]) / amax;
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& c : v) c *= phase * inv;
}

}  // namespace

EigenMode eigen_mode(const CMat& d_h, int branch, double gap_tol) {
  const int n = d_h.dim();
  if (branch < 0 || branch >= n) throw Error("eigen_mode: branch out of range");
  if (n == 1) return {d_h.at(0, 0).real(), CVec{Cplx{1.0, 0.0}}};

  const auto ev = hermitian_eigenvalues(d_h);
  const double lam = ev[static_cast<std::size_t>(branch)];
  double scale = 1.0;
  for (double e : ev) scale = std::max(scale, std::abs(e));
  for (int j = 0; j < n; ++j) {
    if (j == branch) continue;
    if (std::abs(ev[static_cast<std::size_t>(j)] - lam) < gap_tol * scale)
      throw DegeneracyError("eigen_mode: eigenvalue gap below threshold (mode conversion regime)");
  }

  CMat shifted = d_h;
  for (int i = 0; i < n; ++i) shifted.at(i, i) -= lam;
  CVec v = null_vector(shifted);
  fix_phase_and_normalize(v);
  return {lam, std::move(v)};
}

EigenMode eigen_mode(const ReducedSymbol& d_h, const Vec& k, const Vec& x, int branch,
                     double gap_tol) {
  return eigen_mode(d_h.eval(k, x), branch, gap_tol);
}

// ---------------------------------------------------------------------------

Vec group_velocity(const DispersionModel& model, const Vec& k, const Vec& x, double floor) {
  Vec dk, dx;
  model.grad(k, x, dk, dx);
  const std::size_t n = k.size();
  const double d_omega = -dk[n - 1] / model.c;
  if (std::abs(d_omega) < floor)
    throw StationaryPointError("group_velocity: |dD/domega| below floor");
  Vec v(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) v[i] = -dk[i] / d_omega;
  return v;
}

// ---------------------------------------------------------------------------
// absorption coefficients

ReducedSymbol reduce_graded(const GradedTwoPoint& d, double q, double p) {
  ReducedSymbol r0 = reduce_symbol(d.d0, q, p, 2);
  ReducedSymbol r1 = reduce_symbol(d.d1, q, p, 1);
  std::vector<SymField> grading;
  grading.push_back(r0.grading()[0]);
  grading.push_back(sf_add(r0.grading()[1], r1.grading()[0]));
  return ReducedSymbol(d.d0.order(), d.d0.scale(), q, p, std::move(grading));
}

namespace {

double absorption_from_grading(const SymField& principal, const SymField& correction, double p,
                               const Vec& k, const Vec& x, const CVec& e) {
  const int dim = principal.dim;
  CMat d1a = sf_antihermitian_part(correction).eval(k, x);
  // sum_i d2 D/dk_i dx^i of the Hermitian principal tensor
  CMat mix(principal.mat);
  for (int i = 0; i < dim; ++i)
    mix += principal.deriv(mi_unit(dim, i), mi_unit(dim, i), k, x);
  CMat total = d1a - (p - 0.5) * mix;
  return sandwich(e, total).real();
}

}  // namespace

double absorption_coefficient(const ReducedSymbol& graded, const Vec& k, const Vec& x,
                              const CVec& e) {
  if (!graded.has_grading() || graded.grading().size() < 2)
    throw GradingError("absorption_coefficient: d0/d1 grading required");
  return absorption_from_grading(graded.grading()[0], graded.grading()[1], graded.p(), k, x, e);
}

double absorption_coefficient(const ReducedSymbol& graded, const Vec& k, const Vec& x,
                              int branch) {
  if (!graded.has_grading() || graded.grading().size() < 2)
    throw GradingError("absorption_coefficient: d0/d1 grading required");
  CMat principal = sf_hermitian_part(graded.grading()[0]).eval(k, x);
  EigenMode mode = eigen_mode(principal, branch);
  return absorption_coefficient(graded, k, x, mode.vec);
}

double absorption_coefficient(const GradedTwoPoint& d, const Vec& k, const Vec& x, double q,
                              double p, int branch) {
  return absorption_coefficient(reduce_graded(d, q, p), k, x, branch);
}

}  // namespace wavekit
