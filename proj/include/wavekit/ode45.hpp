#pragma once

// Embedded Dormand-Prince 5(4) with PI-free standard step control, shared by
// the ray tracer, the Wigner characteristics solver, and the paraxial ODE
// propagator. Non-symplectic by design: conservation is monitored by the
// callers instead (flows are evaluated with event output and variable step).

#include <cmath>
#include <vector>

#include "wavekit/errors.hpp"

namespace wavekit {

struct Ode45Options {
  double rtol = 1e-9;
  double atol = 1e-12;
  double h_init = 0.0;  // 0: heuristic
  double h_max = 0.0;   // 0: unlimited; also bounds output sample spacing
  int max_steps = 400000;
};

// Rhs: void(double t, const std::vector<double>& y, std::vector<double>& dy)
// Observer: void(double t, const std::vector<double>& y); called at t0 and at
// every accepted step (including the clamped final step at t1)
template <class Rhs, class Observer>
void ode45_integrate(Rhs&& rhs, std::vector<double>& y, double t0, double t1,
                     const Ode45Options& opt, Observer&& observe) {
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

  const std::size_t n = y.size();
  const double span = t1 - t0;
  if (span == 0.0) {
    observe(t0, y);
    return;
  }
  const double dir = (span > 0.0) ? 1.0 : -1.0;

  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), y5(n), err(n);
  double t = t0;
  observe(t, y);
  rhs(t, y, k1);

  double h = opt.h_init;
  if (h == 0.0) {
    double ynorm = 0.0, fnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ynorm = std::max(ynorm, std::abs(y[i]));
      fnorm = std::max(fnorm, std::abs(k1[i]));
    }
    h = 0.01 * std::max(1e-6, ynorm) / std::max(1e-6, fnorm);
    h = std::min(h, 0.1 * std::abs(span));
    h = std::max(h, 1e-12 * std::abs(span));
  }
  if (opt.h_max > 0.0) h = std::min(h, opt.h_max);
  h = std::abs(h) * dir;

  for (int step = 0; step < opt.max_steps; ++step) {
    if ((t - t1) * dir >= 0.0) return;
    if (opt.h_max > 0.0 && std::abs(h) > opt.h_max) h = opt.h_max * dir;
    if ((t + h - t1) * dir > 0.0) h = t1 - t;

    for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + h * a21 * k1[i];
    rhs(t + c2 * h, yt, k2);
    for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * h, yt, k3);
    for (std::size_t i = 0; i < n; ++i)
      yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h, yt, k4);
    for (std::size_t i = 0; i < n; ++i)
      yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * h, yt, k5);
    for (std::size_t i = 0; i < n; ++i)
      yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(t + h, yt, k6);
    for (std::size_t i = 0; i < n; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(t + h, y5, k7);

    double errnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                            e7 * k7[i]);
      const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      errnorm += (e / sc) * (e / sc);
    }
    errnorm = std::sqrt(errnorm / static_cast<double>(n));

    if (errnorm <= 1.0) {
      t += h;
      y.swap(y5);
      k1.swap(k7);  // FSAL
      observe(t, y);
      const double fac = std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(errnorm, 1e-12), -0.2)));
      h *= fac;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(errnorm, -0.2));
      if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(t)))
        throw StepControlError("ode45: step size underflow");
    }
  }
  throw StepControlError("ode45: step budget exhausted before reaching the end of the span");
}

}  // namespace wavekit
