#pragma once

// Exact reference propagation of the scalar dispersive wave equation by
// Fourier-mode decomposition: the positive-wavenumber half-spectrum advances
// by e^{-i omega(k) t} on the forward branch and the real field is twice the
// real part. This is the forward-propagating solution matching the beam
// ansatz, not the two-branch Cauchy solution.

#include <memory>

#include "wavekit/beam.hpp"
#include "wavekit/grid.hpp"
#include "wavekit/media.hpp"

namespace wavekit {

class SpectralPropagator {
 public:
  // psi0 real, boundary-decaying; dispersion roots solved once per mode,
  // seeded from the neighboring mode
  SpectralPropagator(GridField psi0, std::shared_ptr<const RefractiveMedium> medium);

  GridField at(double t) const;

  // sum |psi_hat|^2 over the kept half-spectrum (invariant under propagation)
  double spectral_mass() const;
  // max |D(k, omega(k))| over kept modes after refinement
  double max_root_residual() const;

 private:
  GridField psi0_;
  std::shared_ptr<const RefractiveMedium> medium_;
  std::vector<Cplx> half_;     // raw FFT coefficients, positive bins only
  std::vector<double> omega_;  // forward-branch roots per positive bin
  std::vector<double> kpos_;
  double v_max_ = 0.0;         // fastest significant mode
  double support_hi_ = 0.0;    // right edge of the initial envelope support
};

GridField exact_propagate(const GridField& psi0, std::shared_ptr<const RefractiveMedium> medium,
                          double t);

struct FieldComparison {
  double l2_rel = 0.0;
  double linf_rel = 0.0;
  double width_a = 0.0, width_b = 0.0;  // 2 sigma of the squared envelope
  double peak_a = 0.0, peak_b = 0.0;    // envelope maximum via quadratic fit
  double peak_shift = 0.0;              // peak_b - peak_a
};

FieldComparison compare_fields(const GridField& a, const GridField& b);

// complex analytic envelope: inverse transform of twice the half-spectrum
CVec analytic_envelope(const GridField& f);

// grid sizing: domain length >= x_c(t_max) + 8 w(t_max) + 8 w0 (margin
// configurable) and dx <= (2 pi/k0)/16, M a power of two
struct GridSpec {
  int m = 0;
  double x_min = 0.0, dx = 0.0;
};
GridSpec oracle_grid(const TrainSpec& spec, const BeamParams& params, double t_max,
                     double margin = 8.0, int max_m = 1 << 16);

// A0 exp(-x^2/w0^2) cos(k0 x) sampled on the grid
GridField train_initial_field(const TrainSpec& spec, const GridSpec& grid);

// beam-tracing field on the same grid at the state's time
GridField beam_field_on_grid(const BeamState& st, const TrainSpec& spec, const GridSpec& grid);

}  // namespace wavekit
