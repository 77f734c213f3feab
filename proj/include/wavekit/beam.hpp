#pragma once

// Paraxial beam tracing of Gaussian wave trains: the closed-form
// homogeneous-medium wavelet and a general ODE propagator for the paraxial
// parameter set along a reference ray, which reduces to the closed form in
// homogeneous media.
//
// Conventions fixed by the forward-propagating carrier cos(k0 x - omega0 t):
//   S0(t) = -omega0 (1 - vg/vp) t
// and, in one transverse dimension, the envelope phase carries HALF the
// stored Gouy parameter phi(t) = arctan(2(1-r) vg t/(k0 w0^2)); the complex
// amplitude prefactor is (1 + i zeta)^(-1/2).

#include <memory>

#include "wavekit/media.hpp"
#include "wavekit/rays.hpp"

namespace wavekit {

struct TrainSpec {
  double a0 = 1.0;  // amplitude
  double w0 = 0.0;  // initial e^-1 half-width
  double k0 = 0.0;  // carrier wavenumber
  double hard_floor = 6.0;

  // throws below the hard floor; true when the comfortable paraxial ordering
  // k0 w0 >= 2 pi also holds
  bool validate() const;
};

struct BeamParams {
  double omega0 = 0.0, vp = 0.0, vg = 0.0, r = 1.0;
};

// omega0, vp, vg from the dispersion root at k0; the spreading parameter from
// r = 1 - k0 omega''(k0)/vg (equivalently (1-r) vg = k0 d2omega/dk2)
BeamParams dispersion_params(const RefractiveMedium& medium, const TrainSpec& spec);

// direct overrides (r, vg/vp) with vp = c and omega0 = c k0
BeamParams beam_params_overrides(const TrainSpec& spec, double r, double vg_over_vp, double c);

struct BeamState {
  double t = 0.0;
  double x_c = 0.0;  // envelope center vg t
  double omega0 = 0.0, vg = 0.0, vp = 0.0, r = 1.0;
  double w = 0.0;       // e^-1 half-width
  double inv_r = 0.0;   // inverse phase-front curvature radius 1/R
  double phi = 0.0;     // Gouy-type shift, arctan(zeta)
  double s0 = 0.0;      // carrier phase at the center
  double a_mag = 0.0;   // envelope amplitude
};

BeamState propagate_closed_form(const TrainSpec& spec, const BeamParams& p, double t);

struct FieldValue {
  double psi = 0.0;
  bool extrapolated = false;  // outside the paraxial window (value still valid math)
};

FieldValue evaluate_field(const BeamState& st, const TrainSpec& spec, double x,
                          double window_widths = 5.0);

// reduced single-time Hamiltonian Omega(k, x) with the derivatives the
// paraxial Riccati needs; scale bounds the nonuniformity length
struct ReducedHamiltonian {
  std::function<double(double k, double x)> omega, d_k, d_x, d_kk, d_kx, d_xx;
  double scale = 1e300;
};

// homogeneous Omega(k) from the dispersion root of a refractive medium
ReducedHamiltonian reduced_hamiltonian(std::shared_ptr<const RefractiveMedium> medium);
// quadratic-in-k model carrying exactly the carrier-point derivatives
ReducedHamiltonian reduced_from_params(const BeamParams& p, double k0);

// evolve Phi = k0/R + 2i/w^2 by dPhi/dt = -(O_xx + 2 O_kx Phi + O_kk Phi^2)
// along the reference ray, dS0/dt = k O_k - O, dphi/dt = O_kk Im Phi, with the
// amplitude from the Im Phi conservation law; emits one state per time
std::vector<BeamState> propagate_paraxial_ode(const ReducedHamiltonian& h, const Ray& reference,
                                              const TrainSpec& spec, const BeamParams& p,
                                              const std::vector<double>& times,
                                              double rtol = 1e-11);

}  // namespace wavekit
