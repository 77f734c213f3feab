#include "wavekit/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace wavekit {

SpectralPropagator::SpectralPropagator(GridField psi0,
                                       std::shared_ptr<const RefractiveMedium> medium)
    : psi0_(std::move(psi0)), medium_(std::move(medium)) {
  require_grid_contract(psi0_);
  require_boundary_decay(psi0_);
  double imax = 0.0, rmax = 0.0;
  for (const Cplx& v : psi0_.samples) {
    imax = std::max(imax, std::abs(v.imag()));
    rmax = std::max(rmax, std::abs(v.real()));
  }
  if (imax > 1e-12 * std::max(rmax, 1e-300))
    throw Error("SpectralPropagator: initial field must be real");

  const int m = psi0_.size();
  std::vector<Cplx> spec = psi0_.samples;
  fft_pow2(spec, false);
  const auto ks = fft_wavenumbers(m, psi0_.dx);

  double pmax = 0.0;
  for (int i = 1; i < m / 2; ++i) pmax = std::max(pmax, std::norm(spec[static_cast<std::size_t>(i)]));

  half_.resize(static_cast<std::size_t>(m / 2 - 1));
  omega_.resize(half_.size());
  kpos_.resize(half_.size());
  double seed = 0.0;
  for (int i = 1; i < m / 2; ++i) {
    const std::size_t j = static_cast<std::size_t>(i - 1);
    half_[j] = spec[static_cast<std::size_t>(i)];
    kpos_[j] = ks[static_cast<std::size_t>(i)];
    try {
      omega_[j] = medium_->omega_root(kpos_[j], seed);
      seed = omega_[j];
    } catch (const RootFindError&) {
      // negligible spectral content may fall outside the dispersion window
      if (std::norm(half_[j]) > 1e-12 * pmax) throw;
      half_[j] = 0.0;
      omega_[j] = 0.0;
    }
    if (std::norm(half_[j]) > 1e-12 * pmax)
      v_max_ = std::max(v_max_, std::abs(medium_->group_velocity(kpos_[j], omega_[j])));
  }

  // right edge of the significant initial support: the periodic spectral
  // evolution is valid only while the train stays inside the domain
  double amax = 0.0;
  for (const Cplx& v : psi0_.samples) amax = std::max(amax, std::abs(v));
  support_hi_ = psi0_.x_min;
  for (int i = m - 1; i >= 0; --i)
    if (std::abs(psi0_.samples[static_cast<std::size_t>(i)]) > 1e-12 * amax) {
      support_hi_ = psi0_.x_at(i);
      break;
    }
}

GridField SpectralPropagator::at(double t) const {
  const int m = psi0_.size();
  const double x_hi = psi0_.x_min + psi0_.dx * (m - 1);
  if (support_hi_ + v_max_ * std::abs(t) > x_hi)
    throw BoundaryError("SpectralPropagator: domain too small for the requested flight time");
  std::vector<Cplx> out(static_cast<std::size_t>(m), Cplx{0.0, 0.0});
  for (std::size_t j = 0; j < half_.size(); ++j) {
    const double ph = -omega_[j] * t;
    out[j + 1] = 2.0 * half_[j] * Cplx(std::cos(ph), std::sin(ph));
  }
  fft_pow2(out, true);
  GridField f = GridField::zeros(m, psi0_.x_min, psi0_.dx, psi0_.time + t);
  for (int i = 0; i < m; ++i) f.samples[static_cast<std::size_t>(i)] = out[static_cast<std::size_t>(i)].real();
  require_boundary_decay(f, 1e-9);  // domain must still contain the train
  return f;
}

double SpectralPropagator::spectral_mass() const {
  double s = 0.0;
  for (const Cplx& v : half_) s += std::norm(v);
  return s;
}

double SpectralPropagator::max_root_residual() const {
  double r = 0.0;
  for (std::size_t j = 0; j < half_.size(); ++j) {
    if (half_[j] == Cplx{0.0, 0.0}) continue;
    r = std::max(r, std::abs(medium_->dispersion(kpos_[j], omega_[j])));
  }
  return r;
}

GridField exact_propagate(const GridField& psi0, std::shared_ptr<const RefractiveMedium> medium,
                          double t) {
  return SpectralPropagator(psi0, std::move(medium)).at(t);
}

CVec analytic_envelope(const GridField& f) {
  const int m = f.size();
  require_grid_contract(f);
  std::vector<Cplx> spec = f.samples;
  fft_pow2(spec, false);
  std::vector<Cplx> half(static_cast<std::size_t>(m), Cplx{0.0, 0.0});
  for (int i = 1; i < m / 2; ++i) half[static_cast<std::size_t>(i)] = 2.0 * spec[static_cast<std::size_t>(i)];
  fft_pow2(half, true);
  return half;
}

namespace {

struct EnvelopeStats {
  double width = 0.0;  // 2 sigma of |u|^2
  double peak = 0.0;   // quadratically interpolated |u|^2 maximum location
};

EnvelopeStats envelope_stats(const GridField& f) {
  const CVec u = analytic_envelope(f);
  const int m = f.size();
  double mass = 0.0, mean = 0.0;
  int imax = 0;
  double vmax = -1.0;
  for (int i = 0; i < m; ++i) {
    const double w = std::norm(u[static_cast<std::size_t>(i)]);
    const double x = f.x_at(i);
    mass += w;
    mean += w * x;
    if (w > vmax) {
      vmax = w;
      imax = i;
    }
  }
  mean /= mass;
  double var = 0.0;
  for (int i = 0; i < m; ++i) {
    const double w = std::norm(u[static_cast<std::size_t>(i)]);
    const double d = f.x_at(i) - mean;
    var += w * d * d;
  }
  var /= mass;

  EnvelopeStats st;
  st.width = 2.0 * std::sqrt(var);
  // parabola through the three samples around the max
  if (imax > 0 && imax + 1 < m) {
    const double ym = std::norm(u[static_cast<std::size_t>(imax - 1)]);
    const double y0 = std::norm(u[static_cast<std::size_t>(imax)]);
    const double yp = std::norm(u[static_cast<std::size_t>(imax + 1)]);
    const double denom = ym - 2.0 * y0 + yp;
    const double shift = (denom != 0.0) ? 0.5 * (ym - yp) / denom : 0.0;
    st.peak = f.x_at(imax) + shift * f.dx;
  } else {
    st.peak = f.x_at(imax);
  }
  return st;
}

}  // namespace

FieldComparison compare_fields(const GridField& a, const GridField& b) {
  if (a.size() != b.size() || std::abs(a.x_min - b.x_min) > 1e-12 ||
      std::abs(a.dx - b.dx) > 1e-15 || std::abs(a.time - b.time) > 1e-9)
    throw GridError("compare_fields: grids or times differ");

  double diff2 = 0.0, ref2 = 0.0, dinf = 0.0, rinf = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    const double av = a.samples[static_cast<std::size_t>(i)].real();
    const double bv = b.samples[static_cast<std::size_t>(i)].real();
    diff2 += (av - bv) * (av - bv);
    ref2 += av * av;
    dinf = std::max(dinf, std::abs(av - bv));
    rinf = std::max(rinf, std::abs(av));
  }
  FieldComparison cmp;
  cmp.l2_rel = (ref2 > 0.0) ? std::sqrt(diff2 / ref2) : (diff2 > 0.0 ? 1.0 : 0.0);
  cmp.linf_rel = (rinf > 0.0) ? dinf / rinf : (dinf > 0.0 ? 1.0 : 0.0);
  const EnvelopeStats sa = envelope_stats(a), sb = envelope_stats(b);
  cmp.width_a = sa.width;
  cmp.width_b = sb.width;
  cmp.peak_a = sa.peak;
  cmp.peak_b = sb.peak;
  cmp.peak_shift = sb.peak - sa.peak;
  return cmp;
}

GridSpec oracle_grid(const TrainSpec& spec, const BeamParams& params, double t_max, double margin,
                     int max_m) {
  const BeamState end = propagate_closed_form(spec, params, t_max);
  const double lo = -margin * spec.w0;
  const double hi = end.x_c + margin * end.w + margin * spec.w0;
  const double dx_max = (2.0 * kPi / spec.k0) / 16.0;
  int m = 64;
  while (m * dx_max < hi - lo) {
    m *= 2;
    if (m > max_m) throw GridError("oracle_grid: grid budget exceeded for the requested span");
  }
  GridSpec g;
  g.m = m;
  g.x_min = lo;
  g.dx = (hi - lo) / m;
  return g;
}

GridField train_initial_field(const TrainSpec& spec, const GridSpec& grid) {
  GridField f = GridField::zeros(grid.m, grid.x_min, grid.dx, 0.0);
  for (int i = 0; i < grid.m; ++i) {
    const double x = f.x_at(i);
    f.samples[static_cast<std::size_t>(i)] =
        spec.a0 * std::exp(-x * x / (spec.w0 * spec.w0)) * std::cos(spec.k0 * x);
  }
  return f;
}

GridField beam_field_on_grid(const BeamState& st, const TrainSpec& spec, const GridSpec& grid) {
  GridField f = GridField::zeros(grid.m, grid.x_min, grid.dx, st.t);
  for (int i = 0; i < grid.m; ++i)
    f.samples[static_cast<std::size_t>(i)] = evaluate_field(st, spec, f.x_at(i)).psi;
  return f;
}

}  // namespace wavekit
