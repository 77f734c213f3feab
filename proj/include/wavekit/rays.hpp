#pragma once

// Geometrical-optics rays: Hamilton's equations dx/dtau = dD/dk,
// dk/dtau = -dD/dx with the eikonal phase accumulated as the action and the
// full 2N x 2N monodromy integrated from the variational equations. Squared
// amplitude transported by the flux-tube reduction of the continuity
// equation; gamma_A < 0 is absorbing (printed sign convention).

#include <functional>

#include "wavekit/dispersion.hpp"

namespace wavekit {

enum class RayStatus { completed, aborted_degenerate, aborted_caustic };

struct RaySample {
  double tau = 0.0;
  Vec x, k;
  Vec v;                           // dx/dtau = dD/dk at the sample
  double S = 0.0;                  // action integral of k . dx/dtau
  double logA2 = 0.0;              // NaN until transport_amplitude runs
  std::vector<double> monodromy;   // 2N x 2N row-major; empty if not integrated
};

struct Ray {
  int dim = 1;
  RayStatus status = RayStatus::completed;
  std::vector<RaySample> samples;

  const RaySample& front() const { return samples.front(); }
  const RaySample& back() const { return samples.back(); }
};

struct TraceOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double h_max = 0.0;  // 0: unlimited; bounds the output sample spacing
  bool with_monodromy = true;
  bool require_shell = true;      // |D(k0,x0)| checked against shell_tol
  bool project_to_shell = false;  // Newton-project k0 onto D = 0 first
  double shell_tol = 1e-8;
  bool capture_degenerate = false;  // return a partial ray instead of throwing
  int max_steps = 400000;
};

Ray trace_ray(const DispersionModel& model, Vec x0, Vec k0, double tau0, double tau1,
              const TraceOptions& opt = {});

enum class BundleKind { parallel, point_source, seeded };

struct TransportOptions {
  BundleKind bundle = BundleKind::parallel;
  // N x N row-major dk0/dx0 of the launch wavefront for BundleKind::seeded;
  // parallel is seeded with zero
  std::vector<double> seed;
  double logA2_0 = 0.0;
  double caustic_floor = 1e-10;  // relative to the reference |det J|
  bool capture_caustic = false;  // truncate with status instead of throwing
};

// fills logA2 along the ray:
//   logA2(tau) = logA2_0 + int 2 gamma dtau - log|det J(tau)/det J(ref)|
// where J is the bundle Jacobian from the monodromy blocks. For point-source
// bundles det J(0) = 0; the reference is the first sample with |det J| above
// floor and earlier samples carry NaN.
Ray transport_amplitude(const Ray& ray,
                        const std::function<double(const Vec& k, const Vec& x)>& gamma,
                        const TransportOptions& opt = {});

// (tau, S) pairs accumulated on the integrator grid
std::vector<std::pair<double, double>> eikonal_phase(const Ray& ray);

// det of the full 2N x 2N monodromy (symplectic flow: 1 up to integrator error)
double monodromy_det(const RaySample& s);

// bundle Jacobian det used by transport for the given kind and seed
double bundle_jacobian(const Ray& ray, const RaySample& s, BundleKind kind,
                       const std::vector<double>& seed = {});

}  // namespace wavekit
