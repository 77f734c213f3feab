#include "wavekit/beam.hpp"

#include <cmath>

#include "wavekit/ode45.hpp"

namespace wavekit {

bool TrainSpec::validate() const {
  if (w0 <= 0.0 || k0 <= 0.0 || a0 <= 0.0)
    throw Error("TrainSpec: A0, w0, k0 must be positive");
  if (k0 * w0 < hard_floor)
    throw Error("TrainSpec: k0 w0 below the paraxial hard floor");
  return k0 * w0 >= 2.0 * kPi;
}

BeamParams dispersion_params(const RefractiveMedium& medium, const TrainSpec& spec) {
  spec.validate();
  const double om0 = medium.omega_root(spec.k0);
  // branch sanity: a non-monotone omega n(omega) near the root would make the
  // forward branch ambiguous
  if (medium.n(om0) + om0 * medium.dn(om0) <= 0.0)
    throw RootFindError("dispersion_params: branch ambiguous (omega n not increasing)");
  BeamParams p;
  p.omega0 = om0;
  p.vp = medium.phase_velocity(om0);
  p.vg = medium.group_velocity(spec.k0, om0);
  p.r = 1.0 - spec.k0 * medium.omega_kk(spec.k0, om0) / p.vg;
  return p;
}

BeamParams beam_params_overrides(const TrainSpec& spec, double r, double vg_over_vp, double c) {
  spec.validate();
  BeamParams p;
  p.vp = c;
  p.omega0 = c * spec.k0;
  p.vg = vg_over_vp * c;
  p.r = r;
  return p;
}

BeamState propagate_closed_form(const TrainSpec& spec, const BeamParams& p, double t) {
  if (t < 0.0) throw Error("propagate_closed_form: t must be nonnegative");
  BeamState st;
  st.t = t;
  st.omega0 = p.omega0;
  st.vg = p.vg;
  st.vp = p.vp;
  st.r = p.r;
  st.x_c = p.vg * t;

  const double zeta = 2.0 * (1.0 - p.r) * p.vg * t / (spec.k0 * spec.w0 * spec.w0);
  st.w = spec.w0 * std::sqrt(1.0 + zeta * zeta);
  st.inv_r = 2.0 * zeta / (spec.k0 * spec.w0 * spec.w0 * (1.0 + zeta * zeta));
  st.phi = std::atan(zeta);
  st.s0 = -p.omega0 * (1.0 - p.vg / p.vp) * t;
  st.a_mag = spec.a0 * std::sqrt(spec.w0 / st.w);
  return st;
}

FieldValue evaluate_field(const BeamState& st, const TrainSpec& spec, double x,
                          double window_widths) {
  const double xi = x - st.x_c;
  FieldValue out;
  out.extrapolated = std::abs(xi) > window_widths * st.w;
  // one transverse dimension: the wavelet's envelope phase is half the stored
  // Gouy parameter
  const double phase =
      st.s0 + spec.k0 * xi + 0.5 * spec.k0 * st.inv_r * xi * xi - 0.5 * st.phi;
  out.psi = st.a_mag * std::exp(-xi * xi / (st.w * st.w)) * std::cos(phase);
  return out;
}

ReducedHamiltonian reduced_hamiltonian(std::shared_ptr<const RefractiveMedium> medium) {
  ReducedHamiltonian h;
  auto root = [medium](double k) { return medium->omega_root(k); };
  h.omega = [root](double k, double) { return root(k); };
  h.d_k = [medium, root](double k, double) {
    const double om = root(k);
    return medium->group_velocity(k, om);
  };
  h.d_kk = [medium, root](double k, double) {
    const double om = root(k);
    return medium->omega_kk(k, om);
  };
  h.d_x = [](double, double) { return 0.0; };
  h.d_kx = [](double, double) { return 0.0; };
  h.d_xx = [](double, double) { return 0.0; };
  return h;
}

ReducedHamiltonian reduced_from_params(const BeamParams& p, double k0) {
  ReducedHamiltonian h;
  const double om0 = p.omega0, vg = p.vg;
  const double om_kk = (1.0 - p.r) * p.vg / k0;
  h.omega = [om0, vg, om_kk, k0](double k, double) {
    const double dk = k - k0;
    return om0 + vg * dk + 0.5 * om_kk * dk * dk;
  };
  h.d_k = [vg, om_kk, k0](double k, double) { return vg + om_kk * (k - k0); };
  h.d_kk = [om_kk](double, double) { return om_kk; };
  h.d_x = [](double, double) { return 0.0; };
  h.d_kx = [](double, double) { return 0.0; };
  h.d_xx = [](double, double) { return 0.0; };
  return h;
}

std::vector<BeamState> propagate_paraxial_ode(const ReducedHamiltonian& h, const Ray& reference,
                                              const TrainSpec& spec, const BeamParams& p,
                                              const std::vector<double>& times, double rtol) {
  spec.validate();
  if (reference.samples.empty()) throw Error("propagate_paraxial_ode: empty reference ray");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] < times[i - 1]) throw Error("propagate_paraxial_ode: times must be ascending");

  // state: [x_c, k_c, Re Phi, Im Phi, S0, phi]
  std::vector<double> y{reference.front().x[0], reference.front().k[0], 0.0,
                        2.0 / (spec.w0 * spec.w0), 0.0, 0.0};
  double t = reference.front().tau;
  const double im_phi0 = y[3];

  auto rhs = [&](double, const std::vector<double>& s, std::vector<double>& ds) {
    const double xc = s[0], kc = s[1];
    const Cplx phi_c{s[2], s[3]};
    if (s[3] <= 0.0)
      throw CausticError("propagate_paraxial_ode: Im Phi collapsed (Riccati blow-up)");
    const double okk = h.d_kk(kc, xc), okx = h.d_kx(kc, xc), oxx = h.d_xx(kc, xc);
    const Cplx dphi = -(oxx + 2.0 * okx * phi_c + okk * phi_c * phi_c);
    ds[0] = h.d_k(kc, xc);
    ds[1] = -h.d_x(kc, xc);
    ds[2] = dphi.real();
    ds[3] = dphi.imag();
    ds[4] = kc * ds[0] - h.omega(kc, xc);
    ds[5] = okk * s[3];
  };

  Ode45Options opt;
  opt.rtol = rtol;
  opt.atol = 1e-14;

  std::vector<BeamState> out;
  out.reserve(times.size());
  for (double target : times) {
    if (target < t) throw Error("propagate_paraxial_ode: time precedes the reference start");
    if (target > t) {
      ode45_integrate(rhs, y, t, target, opt, [](double, const std::vector<double>&) {});
      t = target;
    }
    const double im_phi = y[3];
    if (im_phi <= 0.0) throw CausticError("propagate_paraxial_ode: Im Phi collapsed");
    BeamState st;
    st.t = t;
    st.x_c = y[0];
    st.omega0 = p.omega0;
    st.vg = p.vg;
    st.vp = p.vp;
    st.r = p.r;
    st.w = std::sqrt(2.0 / im_phi);
    if (st.w > 0.2 * h.scale)
      throw Error("propagate_paraxial_ode: beam width exceeds the paraxial fraction of L");
    st.inv_r = y[2] / spec.k0;
    st.phi = y[5];
    st.s0 = y[4];
    st.a_mag = spec.a0 * std::pow(im_phi / im_phi0, 0.25);
    out.push_back(st);
  }
  return out;
}

}  // namespace wavekit
