#include "wavekit/media.hpp"

#include <cmath>

namespace wavekit {

double RefractiveMedium::omega_root(double k, double seed) const {
  if (k <= 0.0) throw RootFindError("omega_root: forward branch needs k > 0");
  auto [w_lo, w_hi] = omega_window();

  // g(omega) = omega n(omega) - c k is monotone for positive group velocity
  const double target = c() * k;
  auto g = [&](double om) { return om * n(om) - target; };

  // bracket
  double lo = w_lo;
  double hi = (seed > w_lo) ? std::max(2.0 * seed, w_lo + 1.0) : std::max(2.0 * target, w_lo + 1.0);
  int grow = 0;
  while (g(hi) < 0.0) {
    hi *= 2.0;
    if (hi > w_hi || ++grow > 200) throw RootFindError("omega_root: no root in the omega window");
  }

  double om = (seed > lo && seed < hi) ? seed : 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double gv = g(om);
    if (gv > 0.0)
      hi = om;
    else
      lo = om;
    const double slope = n(om) + om * dn(om);
    double next = (slope != 0.0) ? om - gv / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - om) <= 1e-15 * std::max(1.0, std::abs(om))) {
      om = next;
      break;
    }
    om = next;
  }
  if (std::abs(dispersion(k, om)) > 1e-10 * std::max(1.0, k * k))
    throw RootFindError("omega_root: refinement did not meet the residual bound");
  return om;
}

double ColdPlasmaIndex::n(double om) const {
  const double a = 1.0 - wpe_ * wpe_ / (om * om);
  if (a <= 0.0) throw RootFindError("ColdPlasmaIndex: evanescent below the plasma cutoff");
  return std::sqrt(a);
}

double ColdPlasmaIndex::dn(double om) const {
  return wpe_ * wpe_ / (n(om) * om * om * om);
}

double ColdPlasmaIndex::d2n(double om) const {
  const double nn = n(om), np = dn(om);
  return -wpe_ * wpe_ * (np / (nn * nn * om * om * om) + 3.0 / (nn * om * om * om * om));
}

TableIndex::TableIndex(std::vector<double> omega, std::vector<double> n, double c)
    : RefractiveMedium(c), om_(std::move(omega)), n_(std::move(n)) {
  const std::size_t m = om_.size();
  if (m < 3 || n_.size() != m) throw Error("TableIndex: need at least three (omega, n) samples");
  for (std::size_t i = 1; i < m; ++i)
    if (om_[i] <= om_[i - 1]) throw Error("TableIndex: omega samples must increase");

  // natural cubic spline second derivatives (tridiagonal sweep)
  std::vector<double> a(m, 0.0), b(m, 0.0), cc(m, 0.0), d(m, 0.0);
  m_.assign(m, 0.0);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double hl = om_[i] - om_[i - 1], hr = om_[i + 1] - om_[i];
    a[i] = hl / 6.0;
    b[i] = (hl + hr) / 3.0;
    cc[i] = hr / 6.0;
    d[i] = (n_[i + 1] - n_[i]) / hr - (n_[i] - n_[i - 1]) / hl;
  }
  for (std::size_t i = 2; i + 1 < m; ++i) {
    const double f = a[i] / b[i - 1];
    b[i] -= f * cc[i - 1];
    d[i] -= f * d[i - 1];
  }
  for (std::size_t i = m - 2; i >= 1; --i) {
    m_[i] = (d[i] - cc[i] * (i + 2 < m ? m_[i + 1] : 0.0)) / b[i];
    if (i == 1) break;
  }
}

std::size_t TableIndex::segment(double om) const {
  if (om < om_.front() || om > om_.back())
    throw RootFindError("TableIndex: omega outside the tabulated window");
  std::size_t lo = 0, hi = om_.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (om_[mid] <= om)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double TableIndex::n(double om) const {
  const std::size_t i = segment(om);
  const double h = om_[i + 1] - om_[i];
  const double a = (om_[i + 1] - om) / h, b = (om - om_[i]) / h;
  return a * n_[i] + b * n_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double TableIndex::dn(double om) const {
  const std::size_t i = segment(om);
  const double h = om_[i + 1] - om_[i];
  const double a = (om_[i + 1] - om) / h, b = (om - om_[i]) / h;
  return (n_[i + 1] - n_[i]) / h +
         ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * h / 6.0;
}

double TableIndex::d2n(double om) const {
  const std::size_t i = segment(om);
  const double h = om_[i + 1] - om_[i];
  const double a = (om_[i + 1] - om) / h, b = (om - om_[i]) / h;
  return a * m_[i] + b * m_[i + 1];
}

std::shared_ptr<const RefractiveMedium> make_vacuum(double c) {
  return std::make_shared<VacuumIndex>(c);
}
std::shared_ptr<const RefractiveMedium> make_cold_plasma(double omega_pe, double c) {
  return std::make_shared<ColdPlasmaIndex>(omega_pe, c);
}
std::shared_ptr<const RefractiveMedium> make_table(std::vector<double> omega,
                                                   std::vector<double> n, double c) {
  return std::make_shared<TableIndex>(std::move(omega), std::move(n), c);
}

}  // namespace wavekit
