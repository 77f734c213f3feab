#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <vector>

#include "wavekit/multiindex.hpp"
#include "wavekit/poly.hpp"
#include "wavekit/rng.hpp"

namespace wavekit::oracles {

// Left symbol of the operator composition A.B for polynomial symbols, derived
// through the operator route: A = sum_a A_a(x) (-i d_x)^a acting on B psi with
// the binomial Leibniz rule,
//   c(k,x) = sum_{a,b} sum_{g<=a} C(a,g) (-i)^{|g|} A_a(x) (d_x^g B_b)(x) k^{a-g+b}.
// Variables ordered (k_0..k_{N-1}, x_0..x_{N-1}); exact in the coefficients.
inline Poly pdo_compose_left(const Poly& a, const Poly& b, int dim) {
  const int nv = 2 * dim;
  Poly c(nv);
  for (const auto& [ea, ca] : a.terms()) {
    MultiIndex ka(ea.begin(), ea.begin() + dim);
    MultiIndex xa(ea.begin() + dim, ea.end());
    mi_for_each_leq(ka, [&](const MultiIndex& g) {
      const Cplx w = mi_binom(ka, g) * ipow(-mi_order(g)) * ca;
      // (d_x^g b) as a polynomial
      MultiIndex full_g = mi_zero(nv);
      for (int i = 0; i < dim; ++i) full_g[static_cast<std::size_t>(dim + i)] = g[static_cast<std::size_t>(i)];
      Poly db = b.derivative(full_g);
      // multiply by x^xa k^(ka-g)
      MultiIndex shift = mi_zero(nv);
      for (int i = 0; i < dim; ++i) {
        shift[static_cast<std::size_t>(i)] = ka[static_cast<std::size_t>(i)] - g[static_cast<std::size_t>(i)];
        shift[static_cast<std::size_t>(dim + i)] = xa[static_cast<std::size_t>(i)];
      }
      Poly mono(nv);
      mono.add_term(shift, w);
      c += mono * db;
    });
  }
  return c;
}

// random polynomial in (k, x) with integer coefficients in [-3, 3],
// degree <= deg in each variable group
inline Poly random_poly(ProbeRng& rng, int dim, int deg) {
  const int nv = 2 * dim;
  Poly p(nv);
  const auto exps = mi_compositions(deg, nv);
  // sample a handful of monomials of total degree <= deg
  for (int total = 0; total <= deg; ++total) {
    for (const auto& e : mi_compositions(total, nv)) {
      if (rng.uniform01() < 0.45) continue;  // sparsify
      const int c = rng.uniform_int(-3, 3);
      if (c != 0) p.add_term(e, static_cast<double>(c));
    }
  }
  (void)exps;
  if (p.is_zero()) p.add_term(mi_zero(nv), 1.0);
  return p;
}

}  // namespace wavekit::oracles
