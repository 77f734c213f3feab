#pragma once

// Kinetic transport of the Wigner function along Hamiltonian characteristics.
// Sampling is Lagrangian (the dispersion-shell constraint confines support to
// a measure-zero set that Eulerian grids handle poorly); each sample carries
// a constant phase-space volume element by Liouville's theorem.

#include <functional>

#include "wavekit/rays.hpp"

namespace wavekit {

struct WignerSample {
  Vec k, x;
  double w = 0.0;    // Wigner density
  double vol = 0.0;  // phase-space volume element dk dx carried by the sample
};

struct WignerState {
  std::vector<WignerSample> samples;
  double shell_tol = 1e-6;  // |D(k,x)| bound for the space-time formulation
};

// e* . N . e contraction of the source's Weyl symbol
using SourceFn = std::function<double(const Vec& k, const Vec& x)>;

struct WignerOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double h_max = 0.0;
  // enforce |D| < shell_tol on the input (space-time models); reduced
  // single-time Hamiltonians carry no shell constraint
  bool check_shell = true;
  double gamma_floor = 1e-12;  // below this a nonzero source has no on-shell limit
};

// advect every sample along trace_ray characteristics; per accepted step the
// 2 gamma_A term updates by its exact exponential and the source by the
// midpoint rule with source_eff = -2 (e*.N.e)/gamma_A (on-shell limit of the
// kinetic source; gamma_A = 0 with a nonzero source raises SourceError)
WignerState evolve_wigner(const DispersionModel& model, const SourceFn& source,
                          const WignerState& state, double tau0, double tau1,
                          const WignerOptions& opt = {});

// k-quadrature of W at x smoothed over ell:
//   I(x) = (2 pi)^-N sum_i W_i vol_i K_ell(x - x_i),
// interpreted as the scale-averaged intensity <|psi|^2>_ell. CoverageError if
// the outer 5% band of the k-support carries more than 1% of the mass.
double intensity_from_wigner(const WignerState& state, const Vec& x, double ell);

// sum W vol (conserved when gamma = 0 and source = 0)
double wigner_mass(const WignerState& state);

// lattice seeding of the phase-averaged Gaussian wave-train Wigner function,
// optionally chirped by the phase-front curvature (chirp = k0/R):
//   W(k,x) = (A^2/2) sqrt(2 pi) w exp(-2 xi^2/w^2) exp(-(k - k0 - chirp xi)^2 w^2/2),
// xi = x - xc; its k-quadrature is the phase-averaged envelope (A^2/2) e^{-2 xi^2/w^2}
WignerState seed_gaussian_train(double a_mag, double w, double k0, double x_center, int nx, int nk,
                                double span_sigmas = 4.5, double chirp = 0.0);

}  // namespace wavekit
