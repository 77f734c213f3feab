#pragma once

// Refractive-index models n(omega) with two derivatives, the scalar
// dispersion function D(k, omega) = k^2 - omega^2 n^2/c^2, and its root and
// derivative helpers. The forward branch is the root with omega > 0 continued
// in k; root-finding is safeguarded Newton seeded from a neighboring root.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wavekit/common.hpp"
#include "wavekit/errors.hpp"

namespace wavekit {

class RefractiveMedium {
 public:
  explicit RefractiveMedium(double c) : c_(c) {
    if (c <= 0.0) throw Error("RefractiveMedium: c must be positive");
  }
  virtual ~RefractiveMedium() = default;

  virtual double n(double om) const = 0;
  virtual double dn(double om) const = 0;
  virtual double d2n(double om) const = 0;
  // open interval of validity in omega
  virtual std::pair<double, double> omega_window() const = 0;
  virtual std::string name() const = 0;

  double c() const { return c_; }

  double dispersion(double k, double om) const {
    const double nn = n(om);
    return k * k - om * om * nn * nn / (c_ * c_);
  }
  double d_omega(double om) const {
    const double nn = n(om), np = dn(om);
    return -(2.0 * om * nn * nn + 2.0 * om * om * nn * np) / (c_ * c_);
  }
  double d_omega2(double om) const {
    const double nn = n(om), np = dn(om), npp = d2n(om);
    return -(2.0 * nn * nn + 8.0 * om * nn * np + 2.0 * om * om * np * np +
             2.0 * om * om * nn * npp) /
           (c_ * c_);
  }

  // forward-branch root of D(k, omega) = 0; seed with a neighboring mode's
  // root when marching a spectrum
  double omega_root(double k, double seed = 0.0) const;

  double phase_velocity(double om) const { return c_ / n(om); }
  double group_velocity(double k, double om) const {
    return -2.0 * k / d_omega(om);  // -D_k/D_omega
  }
  // implicit second derivative of the root: d2 omega/dk2
  double omega_kk(double k, double om) const {
    const double vg = group_velocity(k, om);
    return -(2.0 + d_omega2(om) * vg * vg) / d_omega(om);
  }

 private:
  double c_;
};

class VacuumIndex final : public RefractiveMedium {
 public:
  explicit VacuumIndex(double c = 1.0) : RefractiveMedium(c) {}
  double n(double) const override { return 1.0; }
  double dn(double) const override { return 0.0; }
  double d2n(double) const override { return 0.0; }
  std::pair<double, double> omega_window() const override { return {0.0, 1e30}; }
  std::string name() const override { return "vacuum"; }
};

class ColdPlasmaIndex final : public RefractiveMedium {
 public:
  ColdPlasmaIndex(double omega_pe, double c = 1.0) : RefractiveMedium(c), wpe_(omega_pe) {
    if (omega_pe <= 0.0) throw Error("ColdPlasmaIndex: omega_pe must be positive");
  }
  double n(double om) const override;
  double dn(double om) const override;
  double d2n(double om) const override;
  std::pair<double, double> omega_window() const override { return {wpe_ * (1.0 + 1e-12), 1e30}; }
  std::string name() const override { return "cold_plasma"; }
  double omega_pe() const { return wpe_; }

 private:
  double wpe_;
};

// natural cubic spline through (omega_i, n_i) samples
class TableIndex final : public RefractiveMedium {
 public:
  TableIndex(std::vector<double> omega, std::vector<double> n, double c = 1.0);
  double n(double om) const override;
  double dn(double om) const override;
  double d2n(double om) const override;
  std::pair<double, double> omega_window() const override { return {om_.front(), om_.back()}; }
  std::string name() const override { return "table"; }

 private:
  std::size_t segment(double om) const;
  std::vector<double> om_, n_, m_;  // nodes, values, spline second derivatives
};

std::shared_ptr<const RefractiveMedium> make_vacuum(double c = 1.0);
std::shared_ptr<const RefractiveMedium> make_cold_plasma(double omega_pe, double c = 1.0);
std::shared_ptr<const RefractiveMedium> make_table(std::vector<double> omega,
                                                   std::vector<double> n, double c = 1.0);

}  // namespace wavekit
