#pragma once

#include <cmath>
#include <functional>

#include "mapg1/errors.hpp"
#include "mapg1/types.hpp"

namespace mapg1 {

namespace detail {

// Gauss-Kronrod 15/7 nodes and weights on [-1, 1].
inline constexpr double kGK15Nodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,
    0.741531185599394,  0.864864423359769,  0.949107912342759,
    0.991455371120813};
inline constexpr double kGK15Weights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529};
inline constexpr double kG7Weights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

template <typename F>
void gk15(const F& f, double a, double b, cplx& kronrod, double& err) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  cplx k(0), g(0);
  for (int i = 0; i < 15; ++i) {
    const cplx v = f(c + h * kGK15Nodes[i]);
    k += kGK15Weights[i] * v;
    if (i % 2 == 1) g += kG7Weights[i / 2] * v;
  }
  kronrod = k * h;
  err = std::abs(k - g) * std::abs(h);
}

template <typename F>
cplx adaptive_gk(const F& f, double a, double b, double abs_tol, int depth) {
  cplx val;
  double err;
  gk15(f, a, b, val, err);
  if (err <= abs_tol || b - a < 1e-14 * (1.0 + std::abs(a))) return val;
  if (depth > 50) throw QuadratureFailure("adaptive quadrature: max depth reached");
  const double mid = 0.5 * (a + b);
  return adaptive_gk(f, a, mid, abs_tol / 2, depth + 1) +
         adaptive_gk(f, mid, b, abs_tol / 2, depth + 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of a complex-valued integrand over
/// [a, b] to the given absolute tolerance.
template <typename F>
cplx integrate(const F& f, double a, double b, double abs_tol = 1e-10) {
  if (!(b > a)) return cplx(0);
  return detail::adaptive_gk(f, a, b, abs_tol, 0);
}

/// Integral over [a, infinity) of an exponentially damped integrand with
/// decay rate at least `rate`: truncated where e^{-rate (x-a)} < ~1e-18.
template <typename F>
cplx integrate_damped(const F& f, double a, double rate, double abs_tol = 1e-10) {
  if (rate <= 0) throw QuadratureFailure("integrate_damped: nonpositive rate");
  const double cutoff = a + 42.0 / rate;
  const double mid = a + 6.0 / rate;
  return integrate(f, a, mid, abs_tol / 2) + integrate(f, mid, cutoff, abs_tol / 2);
}

}  // namespace mapg1
