#include "wavekit/rays.hpp"

#include <cmath>
#include <limits>

#include "wavekit/ode45.hpp"

namespace wavekit {

namespace {

// generic small-matrix determinant by Gaussian elimination with partial pivot
double det_dense(std::vector<double> a, int n) {
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[static_cast<std::size_t>(r * n + c)]) > std::abs(a[static_cast<std::size_t>(piv * n + c)])) piv = r;
    if (a[static_cast<std::size_t>(piv * n + c)] == 0.0) return 0.0;
    if (piv != c) {
      for (int j = 0; j < n; ++j)
        std::swap(a[static_cast<std::size_t>(c * n + j)], a[static_cast<std::size_t>(piv * n + j)]);
      det = -det;
    }
    const double d = a[static_cast<std::size_t>(c * n + c)];
    det *= d;
    for (int r = c + 1; r < n; ++r) {
      const double f = a[static_cast<std::size_t>(r * n + c)] / d;
      if (f == 0.0) continue;
      for (int j = c; j < n; ++j) a[static_cast<std::size_t>(r * n + j)] -= f * a[static_cast<std::size_t>(c * n + j)];
    }
  }
  return det;
}

// integral over [a,b] of the quadratic through (t0,f0), (t1,f1), (t2,f2)
double quad_segment(double a, double b, double t0, double f0, double t1, double f1, double t2,
                    double f2) {
  auto basis = [&](double u, double v) {
    return (b * b * b - a * a * a) / 3.0 - (u + v) * 0.5 * (b * b - a * a) + u * v * (b - a);
  };
  return f0 * basis(t1, t2) / ((t0 - t1) * (t0 - t2)) +
         f1 * basis(t0, t2) / ((t1 - t0) * (t1 - t2)) +
         f2 * basis(t0, t1) / ((t2 - t0) * (t2 - t1));
}

void project_to_shell(const DispersionModel& model, const Vec& x, Vec& k, double tol) {
  Vec gk, gx;
  for (int it = 0; it < 50; ++it) {
    const double d = model.value(k, x);
    if (std::abs(d) <= tol) return;
    model.grad(k, x, gk, gx);
    double g2 = 0.0;
    for (double g : gk) g2 += g * g;
    if (g2 < 1e-30) break;
    for (std::size_t i = 0; i < k.size(); ++i) k[i] -= d * gk[i] / g2;
  }
  throw ShellError("trace_ray: shell projection did not converge");
}

}  // namespace

Ray trace_ray(const DispersionModel& model, Vec x0, Vec k0, double tau0, double tau1,
              const TraceOptions& opt) {
  const int n = model.dim;
  if (static_cast<int>(x0.size()) != n || static_cast<int>(k0.size()) != n)
    throw Error("trace_ray: dimension mismatch");

  if (opt.project_to_shell) project_to_shell(model, x0, k0, 0.1 * opt.shell_tol);
  if (opt.require_shell) {
    Vec gk, gx;
    model.grad(k0, x0, gk, gx);
    double gscale = 1.0;
    for (double g : gk) gscale = std::max(gscale, std::abs(g));
    for (double g : gx) gscale = std::max(gscale, std::abs(g));
    if (std::abs(model.value(k0, x0)) > opt.shell_tol * gscale)
      throw ShellError("trace_ray: initial condition is off the dispersion surface");
  }

  const bool withm = opt.with_monodromy;
  const int m2 = 2 * n;
  const std::size_t nvar = static_cast<std::size_t>(2 * n + 1 + (withm ? m2 * m2 : 0));

  std::vector<double> y(nvar, 0.0);
  for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = x0[static_cast<std::size_t>(i)];
  for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(n + i)] = k0[static_cast<std::size_t>(i)];
  if (withm)
    for (int i = 0; i < m2; ++i) y[static_cast<std::size_t>(2 * n + 1 + i * m2 + i)] = 1.0;

  Vec kk(static_cast<std::size_t>(n)), xx(static_cast<std::size_t>(n));
  Vec gk, gx;
  std::vector<double> hkk, hkx, hxx;

  auto rhs = [&](double, const std::vector<double>& s, std::vector<double>& ds) {
    for (int i = 0; i < n; ++i) {
      xx[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i)];
      kk[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(n + i)];
    }
    model.grad(kk, xx, gk, gx);
    for (int i = 0; i < n; ++i) {
      ds[static_cast<std::size_t>(i)] = gk[static_cast<std::size_t>(i)];        // dx/dtau = D_k
      ds[static_cast<std::size_t>(n + i)] = -gx[static_cast<std::size_t>(i)];   // dk/dtau = -D_x
    }
    double sdot = 0.0;
    for (int i = 0; i < n; ++i) sdot += kk[static_cast<std::size_t>(i)] * gk[static_cast<std::size_t>(i)];
    ds[static_cast<std::size_t>(2 * n)] = sdot;  // dS/dtau = k . dx/dtau
    if (withm) {
      model.hess(kk, xx, hkk, hkx, hxx);
      // variational matrix [[KX, KK], [-XX, -KX^T]] acting on monodromy columns
      const std::size_t off = static_cast<std::size_t>(2 * n + 1);
      for (int col = 0; col < m2; ++col) {
        for (int i = 0; i < n; ++i) {
          double vx = 0.0, vk = 0.0;
          for (int j = 0; j < n; ++j) {
            const double mx = s[off + static_cast<std::size_t>(j * m2 + col)];
            const double mk = s[off + static_cast<std::size_t>((n + j) * m2 + col)];
            vx += hkx[static_cast<std::size_t>(i * n + j)] * mx + hkk[static_cast<std::size_t>(i * n + j)] * mk;
            vk += -hxx[static_cast<std::size_t>(i * n + j)] * mx - hkx[static_cast<std::size_t>(j * n + i)] * mk;
          }
          ds[off + static_cast<std::size_t>(i * m2 + col)] = vx;
          ds[off + static_cast<std::size_t>((n + i) * m2 + col)] = vk;
        }
      }
    }
  };

  Ray ray;
  ray.dim = n;
  Vec vk, vx;
  auto record = [&](double tau, const std::vector<double>& s) {
    RaySample sm;
    sm.tau = tau;
    sm.x.assign(s.begin(), s.begin() + n);
    sm.k.assign(s.begin() + n, s.begin() + 2 * n);
    model.grad(sm.k, sm.x, vk, vx);
    sm.v = vk;
    sm.S = s[static_cast<std::size_t>(2 * n)];
    sm.logA2 = std::numeric_limits<double>::quiet_NaN();
    if (withm) sm.monodromy.assign(s.begin() + 2 * n + 1, s.end());
    ray.samples.push_back(std::move(sm));
  };

  Ode45Options oo;
  oo.rtol = opt.rtol;
  oo.atol = opt.atol;
  oo.h_max = opt.h_max;
  oo.max_steps = opt.max_steps;
  try {
    ode45_integrate(rhs, y, tau0, tau1, oo, record);
  } catch (const DegeneracyError&) {
    if (!opt.capture_degenerate) throw;
    ray.status = RayStatus::aborted_degenerate;
    return ray;
  }
  ray.status = RayStatus::completed;
  return ray;
}

double monodromy_det(const RaySample& s) {
  if (s.monodromy.empty()) throw Error("monodromy_det: ray traced without monodromy");
  const int m2 = static_cast<int>(std::lround(std::sqrt(static_cast<double>(s.monodromy.size()))));
  return det_dense(s.monodromy, m2);
}

double bundle_jacobian(const Ray& ray, const RaySample& s, BundleKind kind,
                       const std::vector<double>& seed) {
  if (s.monodromy.empty()) throw Error("bundle_jacobian: ray traced without monodromy");
  const int n = ray.dim;
  const int m2 = 2 * n;
  auto mblock = [&](int bi, int bj, int i, int j) {
    return s.monodromy[static_cast<std::size_t>((bi * n + i) * m2 + (bj * n + j))];
  };
  if (kind == BundleKind::parallel || kind == BundleKind::seeded) {
    // J = dx/dx0 + dx/dk0 . K0 with K0 the launch-wavefront curvature
    if (kind == BundleKind::seeded && static_cast<int>(seed.size()) != n * n)
      throw Error("bundle_jacobian: seeded bundle needs an N x N dk0/dx0 matrix");
    std::vector<double> j(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj) {
        double v = mblock(0, 0, i, jj);
        if (kind == BundleKind::seeded)
          for (int l = 0; l < n; ++l) v += mblock(0, 1, i, l) * seed[static_cast<std::size_t>(l * n + jj)];
        j[static_cast<std::size_t>(i * n + jj)] = v;
      }
    return det_dense(j, n);
  }
  // point source: transverse contraction of dx/dk0 (N = 2 supported).
  // Shell-tangent launch variations satisfy grad_k D . dk = 0, so the launch
  // direction is perp to v(0); the receive direction is perp to v(tau).
  if (n != 2)
    throw Error("bundle_jacobian: point-source bundles implemented for N = 2");
  auto perp = [](const Vec& v) {
    const double nn = std::hypot(v[0], v[1]);
    return Vec{-v[1] / nn, v[0] / nn};
  };
  Vec kt = perp(ray.front().v), xt = perp(s.v);
  double j = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int jj = 0; jj < 2; ++jj) j += xt[static_cast<std::size_t>(i)] * mblock(0, 1, i, jj) * kt[static_cast<std::size_t>(jj)];
  return j;
}

Ray transport_amplitude(const Ray& ray,
                        const std::function<double(const Vec& k, const Vec& x)>& gamma,
                        const TransportOptions& opt) {
  if (ray.samples.empty()) throw Error("transport_amplitude: empty ray");
  if (ray.samples.front().monodromy.empty())
    throw Error("transport_amplitude: ray must be traced with the variational system");

  Ray out = ray;
  const std::size_t m = out.samples.size();

  // reference sample: first with a usable bundle Jacobian
  std::vector<double> dets(m);
  std::size_t ref = m;
  double absmax = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    dets[i] = bundle_jacobian(ray, ray.samples[i], opt.bundle, opt.seed);
    absmax = std::max(absmax, std::abs(dets[i]));
  }
  for (std::size_t i = 0; i < m; ++i)
    if (std::abs(dets[i]) > 1e-14 * std::max(1.0, absmax)) {
      ref = i;
      break;
    }
  if (ref == m) throw CausticError("transport_amplitude: bundle Jacobian vanishes along the ray");
  const double dref = dets[ref];

  // int 2 gamma dtau on the integrator grid, parabolic segments through
  // consecutive samples (trapezoid when only two samples exist)
  std::vector<double> gvals(m, 0.0);
  if (gamma)
    for (std::size_t i = 0; i < m; ++i) gvals[i] = 2.0 * gamma(ray.samples[i].k, ray.samples[i].x);
  auto tau_of = [&](std::size_t i) { return ray.samples[i].tau; };
  double gacc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0 && gamma) {
      if (m == 2) {
        gacc += 0.5 * (gvals[0] + gvals[1]) * (tau_of(1) - tau_of(0));
      } else {
        const std::size_t c = (i + 1 < m) ? i - 1 : i - 2;  // stencil anchor
        gacc += quad_segment(tau_of(i - 1), tau_of(i), tau_of(c), gvals[c], tau_of(c + 1),
                             gvals[c + 1], tau_of(c + 2), gvals[c + 2]);
      }
    }
    if (i < ref) {
      out.samples[i].logA2 = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    // a sign change means det J crossed zero between samples: the flux-tube
    // reduction is invalid past a caustic (no Maslov continuation)
    if (std::abs(dets[i]) < opt.caustic_floor * std::abs(dref) ||
        std::signbit(dets[i]) != std::signbit(dref)) {
      if (opt.capture_caustic) {
        out.status = RayStatus::aborted_caustic;
        out.samples.resize(i);
        return out;
      }
      throw CausticError("transport_amplitude: |det J| collapsed (caustic)");
    }
    out.samples[i].logA2 = opt.logA2_0 + gacc - std::log(std::abs(dets[i] / dref));
  }
  return out;
}

std::vector<std::pair<double, double>> eikonal_phase(const Ray& ray) {
  std::vector<std::pair<double, double>> out;
  out.reserve(ray.samples.size());
  for (const auto& s : ray.samples) out.emplace_back(s.tau, s.S);
  return out;
}

}  // namespace wavekit
