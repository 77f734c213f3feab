#pragma once

// Scalar Hamiltonian D(k,x), polarization eigenvector e(k,x), group velocity,
// and the (q,p)-family of absorption coefficients extracted from matrix
// symbols. Mode degeneracy is a hard error: mode conversion is out of scope
// and silent traversal would corrupt results.

#include <functional>

#include "wavekit/symbols.hpp"

namespace wavekit {

// ---------------------------------------------------------------------------
// Hamiltonian models for the flow/transport modules

struct DispersionModel {
  int dim = 1;     // phase-space dimension N
  double c = 1.0;  // light speed when the last slot is -omega/c vs ct

  std::function<double(const Vec& k, const Vec& x)> value;  // D(k,x), required
  // optional analytic derivatives; finite differences otherwise
  std::function<void(const Vec&, const Vec&, Vec& dk, Vec& dx)> gradient;
  // row-major dim x dim blocks D_kk, D_kx (d2D/dk_i dx_j), D_xx
  std::function<void(const Vec&, const Vec&, std::vector<double>&, std::vector<double>&,
                     std::vector<double>&)>
      hessian;
  std::function<double(const Vec&, const Vec&)> gamma;        // absorption coefficient
  std::function<CVec(const Vec&, const Vec&)> polarization;   // unit eigenvector

  void grad(const Vec& k, const Vec& x, Vec& dk, Vec& dx) const;
  void hess(const Vec& k, const Vec& x, std::vector<double>& kk, std::vector<double>& kx,
            std::vector<double>& xx) const;
  double gamma_at(const Vec& k, const Vec& x) const { return gamma ? gamma(k, x) : 0.0; }
};

// ---------------------------------------------------------------------------
// eigenmodes of Hermitian symbols (n <= 3, closed forms)

struct EigenMode {
  double value = 0.0;
  CVec vec;  // unit; largest-magnitude component real-positive
};

// branch indexes eigenvalues sorted ascending; a relative gap below gap_tol
// raises DegeneracyError (mode-conversion regime)
EigenMode eigen_mode(const CMat& d_h, int branch, double gap_tol = 1e-8);
EigenMode eigen_mode(const ReducedSymbol& d_h, const Vec& k, const Vec& x, int branch,
                     double gap_tol = 1e-8);

// all eigenvalues ascending (no gap check); exposed for tests
std::vector<double> hermitian_eigenvalues(const CMat& d_h);

// ---------------------------------------------------------------------------
// group velocity under the space-time convention k = (k, -omega/c), x = (r, ct)

// spatial group velocity v^i = -D_{k_i}/D_omega with D_omega = -(1/c) dD/dk_N;
// |D_omega| below floor raises StationaryPointError
Vec group_velocity(const DispersionModel& model, const Vec& k, const Vec& x,
                   double floor = 1e-12);

// ---------------------------------------------------------------------------
// absorption coefficients

// principal + first-correction two-point pair (asymptotic grading d ~ d0 + d1)
struct GradedTwoPoint {
  TwoPointSymbol d0, d1;
};

// order-graded (q,p)-reduction of the pair: component 0 is the principal
// symbol at coincidence, component 1 collects d1 plus the l = 1 reduction of d0
ReducedSymbol reduce_graded(const GradedTwoPoint& d, double q, double p);

// gamma_A^(q,p) = e† [ d_{1,A}^(q,p) - (p - 1/2) sum_i d2 D/dk_i dx^i ] e
double absorption_coefficient(const GradedTwoPoint& d, const Vec& k, const Vec& x, double q,
                              double p, int branch = 0);
// same contraction from an order-graded reduced symbol carrying its (q,p) form
double absorption_coefficient(const ReducedSymbol& graded, const Vec& k, const Vec& x,
                              int branch = 0);
double absorption_coefficient(const ReducedSymbol& graded, const Vec& k, const Vec& x,
                              const CVec& e);

}  // namespace wavekit
