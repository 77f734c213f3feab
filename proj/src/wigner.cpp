#include "wavekit/wigner.hpp"

#include <cmath>

namespace wavekit {

WignerState evolve_wigner(const DispersionModel& model, const SourceFn& source,
                          const WignerState& state, double tau0, double tau1,
                          const WignerOptions& opt) {
  WignerState out;
  out.shell_tol = state.shell_tol;
  out.samples.reserve(state.samples.size());

  TraceOptions topt;
  topt.rtol = opt.rtol;
  topt.atol = opt.atol;
  topt.h_max = opt.h_max;
  topt.with_monodromy = false;
  topt.require_shell = false;  // shell handling below, against state.shell_tol

  for (const auto& s : state.samples) {
    if (opt.check_shell && std::abs(model.value(s.k, s.x)) >= state.shell_tol)
      throw ShellError("evolve_wigner: sample violates the dispersion-shell tolerance");

    Ray ray = trace_ray(model, s.x, s.k, tau0, tau1, topt);

    double w = s.w;
    Vec kmid(s.k.size()), xmid(s.x.size());
    for (std::size_t j = 1; j < ray.samples.size(); ++j) {
      const RaySample& a = ray.samples[j - 1];
      const RaySample& b = ray.samples[j];
      const double dtau = b.tau - a.tau;
      for (std::size_t i = 0; i < kmid.size(); ++i) {
        kmid[i] = 0.5 * (a.k[i] + b.k[i]);
        xmid[i] = 0.5 * (a.x[i] + b.x[i]);
      }
      const double g = model.gamma_at(kmid, xmid);
      double src = 0.0;
      if (source) {
        const double ene = source(kmid, xmid);
        if (ene != 0.0) {
          if (std::abs(g) < opt.gamma_floor)
            throw SourceError(
                "evolve_wigner: driven state with gamma_A = 0 has no on-shell limit");
          src = -2.0 * ene / g;
        }
      }
      w = std::exp(2.0 * g * dtau) * w + dtau * src * std::exp(g * dtau);
    }

    WignerSample ns;
    ns.k = ray.back().k;
    ns.x = ray.back().x;
    ns.w = w;
    ns.vol = s.vol;
    out.samples.push_back(std::move(ns));
  }
  return out;
}

double wigner_mass(const WignerState& state) {
  double m = 0.0;
  for (const auto& s : state.samples) m += s.w * s.vol;
  return m;
}

double intensity_from_wigner(const WignerState& state, const Vec& x, double ell) {
  if (state.samples.empty()) return 0.0;
  const std::size_t n = x.size();
  if (ell <= 0.0) throw Error("intensity_from_wigner: kernel width must be positive");

  // k-support coverage: the outer 5% band must carry < 1% of the mass
  double kmin = std::numeric_limits<double>::infinity(), kmax = -kmin;
  for (const auto& s : state.samples) {
    double kn = 0.0;
    for (double v : s.k) kn += v * v;
    kn = std::sqrt(kn);
    kmin = std::min(kmin, kn);
    kmax = std::max(kmax, kn);
  }
  const double band = 0.05 * (kmax - kmin);
  if (band > 0.0) {
    double edge = 0.0, total = 0.0;
    for (const auto& s : state.samples) {
      double kn = 0.0;
      for (double v : s.k) kn += v * v;
      kn = std::sqrt(kn);
      const double m = std::abs(s.w) * s.vol;
      total += m;
      if (kn > kmax - band || kn < kmin + band) edge += m;
    }
    if (total > 0.0 && edge > 0.01 * total)
      throw CoverageError("intensity_from_wigner: k-support truncated (boundary weight > 1%)");
  }

  const double norm =
      std::pow(2.0 * kPi, -static_cast<double>(n)) * std::pow(2.0 * kPi * ell * ell, -0.5 * n);
  double acc = 0.0;
  for (const auto& s : state.samples) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = x[i] - s.x[i];
      d2 += d * d;
    }
    acc += s.w * s.vol * std::exp(-0.5 * d2 / (ell * ell));
  }
  return acc * norm;
}

WignerState seed_gaussian_train(double a_mag, double w, double k0, double x_center, int nx, int nk,
                                double span_sigmas, double chirp) {
  WignerState st;
  st.samples.reserve(static_cast<std::size_t>(nx * nk));
  const double sx = 0.5 * w;   // sqrt variance of exp(-2 xi^2/w^2)
  const double sk = 1.0 / w;   // sqrt variance of exp(-kappa^2 w^2/2)
  const double x_lo = x_center - span_sigmas * sx;
  const double dx = 2.0 * span_sigmas * sx / (nx - 1);
  // the chirp shears the k-support across the x-window
  const double k_half = span_sigmas * sk + std::abs(chirp) * span_sigmas * sx;
  const double k_lo = k0 - k_half;
  const double dk = 2.0 * k_half / (nk - 1);
  const double amp = 0.5 * a_mag * a_mag * std::sqrt(2.0 * kPi) * w;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nk; ++j) {
      WignerSample s;
      const double x = x_lo + dx * i;
      const double k = k_lo + dk * j;
      s.x = {x};
      s.k = {k};
      const double xi = x - x_center;
      const double kappa = k - k0 - chirp * xi;
      s.w = amp * std::exp(-2.0 * xi * xi / (w * w)) * std::exp(-0.5 * kappa * kappa * w * w);
      s.vol = dx * dk;
      st.samples.push_back(std::move(s));
    }
  return st;
}

}  // namespace wavekit
