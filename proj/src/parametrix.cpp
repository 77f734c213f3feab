#include "wavekit/parametrix.hpp"

#include <cmath>

namespace wavekit {

namespace {

// profile leaf over the space-time coordinates x = (r, ct); no k-dependence
SymField profile_field(const Profile& p, double c) {
  return sf_analytic(2, 1,
                     [p, c](const MultiIndex& dk, const MultiIndex& dx, const Vec&, const Vec& x) {
                       if (mi_order(dk) > 0) return CMat::scalar(0.0);
                       double scale = 1.0;
                       for (int r = 0; r < dx[1]; ++r) scale /= c;  // d/d(ct) = (1/c) d/dt
                       const double t = x[1] / c;
                       return CMat::scalar(scale * p.d(dx[0], dx[1], x[0], t));
                     });
}

// omega = -c k_2 as a field
SymField omega_field(double c) {
  return sf_analytic(2, 1,
                     [c](const MultiIndex& dk, const MultiIndex& dx, const Vec& k, const Vec&) {
                       if (mi_order(dx) > 0 || dk[0] > 0) return CMat::scalar(0.0);
                       if (dk[1] == 0) return CMat::scalar(-c * k[1]);
                       if (dk[1] == 1) return CMat::scalar(-c);
                       return CMat::scalar(0.0);
                     });
}

ReducedSymbol wrap(double order, double scale, SymField f) {
  return ReducedSymbol(order, scale, 1.0, 0.0, 1, std::move(f));
}

}  // namespace

Profile constant_profile(double v) {
  return Profile{[v](int dr, int dt, double, double) { return (dr + dt == 0) ? v : 0.0; }};
}

Profile ramp_profile(double v0, double rate, double mod) {
  return Profile{[v0, rate, mod](int dr, int dt, double r, double t) {
    const double tf = (dt == 0) ? (1.0 + rate * t) : (dt == 1 ? rate : 0.0);
    const double rf = (dr == 0) ? (1.0 + mod * std::sin(r)) : mod * std::sin(r + 0.5 * kPi * dr);
    return v0 * tf * rf;
  }};
}

void ColdPlasmaMedium::validate(double r_lo, double r_hi, double t_lo, double t_hi,
                                int probes) const {
  const double hr = (r_hi - r_lo) / (probes + 1);
  const double ht = (t_hi - t_lo) / (probes + 1);
  const double fd = 1e-4;
  for (int i = 1; i <= probes; ++i) {
    const double r = r_lo + hr * i;
    const double t = t_lo + ht * i;
    if (!(nu(r, t) > 0.0)) throw Error("ColdPlasmaMedium: nu must be positive everywhere");
    if (omega_pe(r, t) < 0.0) throw Error("ColdPlasmaMedium: omega_pe must be nonnegative");
    const double w0 = omega_pe(r, t);
    const double wtt =
        (omega_pe(r, t + fd) - 2.0 * w0 + omega_pe(r, t - fd)) / (fd * fd);
    const double wrr =
        (omega_pe(r + fd, t) - 2.0 * w0 + omega_pe(r - fd, t)) / (fd * fd);
    if (!std::isfinite(wtt) || !std::isfinite(wrr) || std::abs(wtt) > 1e8 || std::abs(wrr) > 1e8)
      throw Error("ColdPlasmaMedium: omega_pe fails the smoothness probe");
  }
}

ReducedSymbol spacetime_symbol(SpaceTimeFn f, double order, double scale, double c) {
  SymField field = sf_analytic(
      2, 1, [f = std::move(f), c](const MultiIndex& dk, const MultiIndex& dx, const Vec& k,
                                  const Vec& x) {
        if (dk[0] > 0) return CMat::scalar(0.0);  // no k_r dependence
        // d/dk_2 = -c d/domega ; d/d(ct) = (1/c) d/dt
        Cplx v = f(dk[1], dx[0], dx[1], -c * k[1], x[0], x[1] / c);
        double w = 1.0;
        for (int i = 0; i < dk[1]; ++i) w *= -c;
        for (int i = 0; i < dx[1]; ++i) w /= c;
        return CMat::scalar(w * v);
      });
  return ReducedSymbol(order, scale, 1.0, 0.0, 1, std::move(field));
}

Cplx eval_spacetime(const ReducedSymbol& s, double omega, double r, double t, double c) {
  return s.eval(Vec{0.0, -omega / c}, Vec{r, c * t}).scalar_value();
}

SymbolSeries::SymbolSeries(std::vector<ReducedSymbol> t) : terms(std::move(t)) {
  if (terms.empty()) throw Error("SymbolSeries: at least one term required");
  for (std::size_t j = 0; j + 1 < terms.size(); ++j) {
    if (std::abs(terms[j + 1].order() - (terms[j].order() - 1.0)) > 1e-12)
      throw Error("SymbolSeries: component orders must decrease by exactly one");
  }
  for (const auto& s : terms) {
    if (s.mat() != 1) throw Error("SymbolSeries: scalar components only");
    if (!s.is_left_form()) throw FormError("SymbolSeries: left-form components required");
  }
}

ReducedSymbol SymbolSeries::combined() const {
  std::vector<SymField> grading;
  grading.reserve(terms.size());
  for (const auto& s : terms) grading.push_back(s.field());
  return ReducedSymbol(terms.front().order(), terms.front().scale(), 1.0, 0.0,
                       std::move(grading));
}

SymbolSeries ohms_law_series(const ColdPlasmaMedium& m) {
  const double c = m.c;
  SymField pe = profile_field(m.omega_pe, c);
  SymField nu = profile_field(m.nu, c);
  SymField om = omega_field(c);
  SymField u = sf_add(om, sf_scale(kImag, nu));          // omega + i nu
  SymField g = sf_scale(4.0 * kPi, sf_recip(sf_mul(pe, pe)));  // 4 pi / omega_pe^2
  SymField q1 = sf_scale(-kImag, sf_mul(u, g));
  SymField q0 = sf_scale(-1.0, sf_mul(nu, g));
  return SymbolSeries({wrap(1.0, 1.0, std::move(q1)), wrap(0.0, 1.0, std::move(q0))});
}

SymbolSeries time_derivative_series(const ColdPlasmaMedium& m) {
  const double c = m.c;
  SymField nu = profile_field(m.nu, c);
  SymField om = omega_field(c);
  SymField u = sf_add(om, sf_scale(kImag, nu));
  SymField s1 = sf_scale(-kImag, u);  // -i(omega + i nu)
  SymField s0 = sf_scale(-1.0, nu);   // -nu
  return SymbolSeries({wrap(1.0, 1.0, std::move(s1)), wrap(0.0, 1.0, std::move(s0))});
}

SymbolSeries build_parametrix(const SymbolSeries& q, int levels, double zero_floor) {
  if (levels < 1 || levels > 2) throw Error("build_parametrix: levels must be 1 or 2");
  const double m = q.leading_order();
  const ReducedSymbol& q_lead = q.terms.front();
  SymField p_lead = sf_recip(q_lead.field(), zero_floor);

  std::vector<ReducedSymbol> out;
  out.push_back(wrap(-m, q_lead.scale(), p_lead));
  if (levels == 2) {
    // residual at combined level 1 of compose_left(p_lead, q):
    //   p_lead q_{m-1} + rule_1(p_lead, q_m); next term cancels it
    ReducedSymbol p_partial = out.front();
    ReducedSymbol resid = compose_left(p_partial, q.combined(), 2);
    if (!resid.has_grading() || resid.grading().size() < 2)
      throw Error("build_parametrix: composition grading missing");
    SymField r1 = resid.grading()[1];
    SymField p_next = sf_scale(-1.0, sf_mul(r1, p_lead));
    out.push_back(wrap(-m - 1.0, q_lead.scale(), std::move(p_next)));
  }
  return SymbolSeries(std::move(out));
}

SymbolSeries time_derivative_parametrix(const ColdPlasmaMedium& m, int levels) {
  return build_parametrix(time_derivative_series(m), levels);
}

ReducedSymbol dielectric_symbol(const ColdPlasmaMedium& m, int levels) {
  if (levels < 1 || levels > 2) throw Error("dielectric_symbol: levels must be 1 or 2");
  SymbolSeries p = build_parametrix(ohms_law_series(m), levels);
  SymbolSeries s = time_derivative_parametrix(m, levels);
  ReducedSymbol conv = compose_left(s.combined(), p.combined(), levels);

  // eps = 1 + 4 pi * (level components of the composition)
  std::vector<SymField> grading;
  SymField lead = sf_add(sf_constant(2, CMat::scalar(1.0)),
                         sf_scale(4.0 * kPi, conv.grading()[0]));
  grading.push_back(std::move(lead));
  for (int l = 1; l < levels; ++l)
    grading.push_back(sf_scale(4.0 * kPi, conv.grading()[static_cast<std::size_t>(l)]));
  return ReducedSymbol(0.0, 1.0, 1.0, 0.0, std::move(grading));
}

}  // namespace wavekit
