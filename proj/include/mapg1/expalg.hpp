#pragma once

#include <vector>

#include "mapg1/distributions.hpp"
#include "mapg1/partial_fractions.hpp"
#include "mapg1/quadrature.hpp"

namespace mapg1 {

/// Distribution of a nonnegative variable whose transform is rational:
/// an atom at zero plus a density sum_k sum_d coef_{k,d} z^d e^{-rate_k z}.
/// Rates may come in conjugate pairs; evaluators are complex-capable and
/// public consumers take real parts after pairing.
///
/// This is the algebra the correction terms ride on: tails, exponentially
/// tilted tails (for the interval terms) and transforms all stay closed
/// under the Theorem-3 building blocks V, V + V', + excess, + E_rho.
struct ExpPoly {
  struct Term {
    cplx rate;               // Re > 0
    std::vector<cplx> coef;  // coef[d] multiplies z^d e^{-rate z}
  };
  cplx atom{0.0};
  std::vector<Term> terms;

  /// Build from a proper rational LST (lst(0) = 1, bounded at infinity).
  static ExpPoly from_lst(const RationalFn& f, double tol = kRootClusterTol) {
    const PoleExpansion pe = pole_expansion(f, tol);
    ExpPoly d;
    d.atom = pe.constant;
    for (const auto& t : pe.terms) {
      if (t.pole.real() >= 0)
        throw Error("ExpPoly: transform pole not in the left half-plane");
      Term term;
      term.rate = -t.pole;
      term.coef.resize(t.laurent.size());
      double fact = 1.0;
      for (std::size_t m = 0; m < t.laurent.size(); ++m) {
        // laurent[m] / (s - p)^{m+1}  <->  laurent[m] z^m e^{-rate z} / m!
        if (m > 0) fact *= m;
        term.coef[m] = t.laurent[m] / fact;
      }
      d.terms.push_back(std::move(term));
    }
    return d;
  }

  cplx density(double z) const {
    cplx v(0);
    for (const Term& t : terms) {
      cplx poly(0);
      double zp = 1.0;
      for (const cplx& c : t.coef) {
        poly += c * zp;
        zp *= z;
      }
      v += poly * std::exp(-t.rate * z);
    }
    return v;
  }

  /// P(Z > t) for t >= 0 (exact exponential algebra).
  cplx tail(double t) const {
    cplx v(0);
    for (const Term& t_ : terms) v += term_tilted_tail(t_, cplx(0), t);
    return v;
  }

  /// E[e^{-s Z}] including the atom.
  cplx lst(cplx s) const {
    cplx v = atom;
    for (const Term& t : terms) {
      double fact = 1.0;
      for (std::size_t d = 0; d < t.coef.size(); ++d) {
        if (d > 0) fact *= d;
        v += t.coef[d] * fact / std::pow(t.rate + s, static_cast<double>(d) + 1.0);
      }
    }
    return v;
  }

  /// e^{rho t} E[e^{-rho Z} 1{Z > t}]: the interval kernel
  /// P(t < Z < t + E_rho) for a real rate, analytically continued for
  /// complex rho. Evaluated in a form with only decaying exponentials.
  cplx interval(cplx rho, double t) const {
    cplx v(0);
    for (const Term& t_ : terms) v += term_tilted_tail(t_, rho, t);
    return v;
  }

 private:
  // e^{rho t} Int_t^inf z^d e^{-(rate+rho) z} dz summed over the term's
  // coefficients; the e^{rho t} factor cancels inside, leaving e^{-rate t}.
  static cplx term_tilted_tail(const Term& term, cplx rho, double t) {
    const cplx a = term.rate + rho;
    cplx v(0);
    for (std::size_t d = 0; d < term.coef.size(); ++d) {
      // Int_t^inf z^d e^{-a z} dz = e^{-a t} sum_{m=0}^{d} d!/m! t^m / a^{d+1-m}
      double dfact = 1.0;
      for (std::size_t k = 2; k <= d; ++k) dfact *= k;
      cplx acc(0);
      double mfact = 1.0;
      double tp = 1.0;
      for (std::size_t m = 0; m <= d; ++m) {
        if (m > 0) {
          mfact *= m;
          tp *= t;
        }
        acc += dfact / mfact * tp / std::pow(a, static_cast<double>(d - m) + 1.0);
      }
      v += term.coef[d] * acc;
    }
    return v * std::exp(-term.rate * t);
  }
};

/// P(Z + H^e > t): PH part exactly, heavy part as a convolution of the
/// density of Z against the cached excess tail.
inline cplx heavy_excess_plus(const ExpPoly& z, const HeavyComponent& h, double t,
                              double abs_tol = 1e-9) {
  if (t <= 0) return cplx(1.0);
  const cplx base = z.tail(t) + z.atom * h.excess_tail(t);
  const cplx conv = integrate(
      [&](double v) { return z.density(v) * h.excess_tail(t - v); }, 0.0, t, abs_tol);
  return base + conv;
}

/// P(t < Z + H^e < t + E_rho) analytically continued in rho:
///   (1/mu_h) [ Int_0^t H(h) K_rho(t-h) dh + Z_hat(rho) Int_0^inf e^{-rho v} H(t+v) dv ]
/// with K_rho(x) = e^{rho x} E[e^{-rho Z} 1{Z > x}] (the stable interval kernel).
inline cplx heavy_excess_interval(const ExpPoly& z, const HeavyComponent& h, cplx rho,
                                  double t, double abs_tol = 1e-9) {
  const double mu_h = h.mean();
  cplx part1(0);
  if (t > 0) {
    part1 = integrate([&](double hv) { return cplx(h.tail(hv)) * z.interval(rho, t - hv); },
                      0.0, t, abs_tol);
  }
  const cplx beyond =
      integrate_damped([&](double v) { return std::exp(-rho * v) * h.tail(t + v); }, 0.0,
                       rho.real(), abs_tol);
  return (part1 + z.lst(rho) * beyond) / mu_h;
}

}  // namespace mapg1
