#pragma once

// Approximate inverses of first-order-in-time operators by the iterative
// left-symbol recursion, specialized to the cold-plasma conductivity and
// dielectric symbols. Space-time convention: x = (r, ct), k = (k_r, -omega/c),
// so the left product rule pairs (omega, t) with the sign of Eq.-(3.3) type
// compositions.

#include <vector>

#include "wavekit/symbols.hpp"

namespace wavekit {

// smooth scalar profile f(r, t) with analytic partial derivatives
struct Profile {
  std::function<double(int dr, int dt, double r, double t)> d;
  double operator()(double r, double t) const { return d(0, 0, r, t); }
};

Profile constant_profile(double v);
// v0 * (1 + rate * t), optionally modulated by (1 + mod * sin r)
Profile ramp_profile(double v0, double rate, double mod = 0.0);

struct ColdPlasmaMedium {
  Profile omega_pe;  // electron plasma frequency [rad/s], >= 0
  Profile nu;        // fictitious collision frequency [rad/s], > 0
  double c = 1.0;

  // nu > 0 and omega_pe smooth (bounded FD second derivatives) on a probe box
  void validate(double r_lo, double r_hi, double t_lo, double t_hi, int probes = 64) const;
};

// f(omega, r, t) and its derivatives as a left-form symbol over the
// space-time phase space (dim N = 2); no k_r dependence
using SpaceTimeFn = std::function<Cplx(int d_om, int d_r, int d_t, double om, double r, double t)>;
ReducedSymbol spacetime_symbol(SpaceTimeFn f, double order, double scale, double c);

// evaluate a space-time symbol at physical arguments (omega, r, t)
Cplx eval_spacetime(const ReducedSymbol& s, double omega, double r, double t, double c = 1.0);

// ordered symbol components of strictly decreasing order (step -1)
struct SymbolSeries {
  std::vector<ReducedSymbol> terms;

  explicit SymbolSeries(std::vector<ReducedSymbol> t);
  double leading_order() const { return terms.front().order(); }
  // graded single symbol summing the components
  ReducedSymbol combined() const;
};

// left symbol series of the generalized Ohm's law operator Q with
// q_{+1} = -4 pi i (omega + i nu)/omega_pe^2 and q_0 = -4 pi nu / omega_pe^2
SymbolSeries ohms_law_series(const ColdPlasmaMedium& m);

// left symbol series of d/dt split as -i(omega + i nu) - nu
SymbolSeries time_derivative_series(const ColdPlasmaMedium& m);

// iterative parametrix: p_{-m} = 1/q_lead and the next correction chosen so
// compose_left(p, q, 2) = 1 + O(delta^2); scalar symbols, levels in {1, 2}.
// Probes where |q_lead| < zero_floor raise ZeroFloorError.
SymbolSeries build_parametrix(const SymbolSeries& q, int levels, double zero_floor = 1e-10);

// parametrix of d/dt: i(omega+i nu)^{-1} - nu(omega+i nu)^{-2} + ...
SymbolSeries time_derivative_parametrix(const ColdPlasmaMedium& m, int levels);

// dielectric symbol: 1 + compose_left(parametrix(dt), 4 pi parametrix(Q));
// levels = 1 keeps the adiabatic term only. Graded [order 0, order -1].
ReducedSymbol dielectric_symbol(const ColdPlasmaMedium& m, int levels);

}  // namespace wavekit
