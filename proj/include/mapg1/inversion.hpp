#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "mapg1/errors.hpp"
#include "mapg1/types.hpp"

namespace mapg1 {

enum class InversionAlgorithm { euler, talbot };

/// Settings for numerical Laplace inversion. `terms` is M in the Euler
/// scheme (2M+1 transform evaluations) and the node count for Talbot.
struct InversionSettings {
  InversionAlgorithm algorithm = InversionAlgorithm::euler;
  int terms = 25;
  double target_abs_tol = 1e-8;

  static InversionSettings euler(int m = 25) { return {InversionAlgorithm::euler, m}; }
  static InversionSettings talbot(int n = 48) { return {InversionAlgorithm::talbot, n}; }
};

using TransformFn = std::function<cplx(cplx)>;

/// Abate-Whitt Euler summation: abscissa a = A/(2t) with A = 18.4, Euler
/// (binomial) acceleration of the alternating partial sums.
inline double euler_invert(const TransformFn& fhat, double t, int m = 25) {
  if (t <= 0) throw InversionFailure("euler_invert: t must be positive");
  if (m < 10) m = 10;
  const double A = 18.4;
  std::vector<double> partial(m + 1);
  double acc = 0.5 * fhat(cplx(A / (2 * t), 0)).real();
  for (int k = 1; k <= 2 * m; ++k) {
    const cplx s(A / (2 * t), k * M_PI / t);
    const double term = fhat(s).real() * ((k % 2 == 0) ? 1.0 : -1.0);
    acc += term;
    if (k >= m) partial[k - m] = acc;
  }
  // binomial average of partial sums s_m .. s_{2m}
  double tot = 0;
  double binom = 1.0;  // C(m, 0)
  for (int j = 0; j <= m; ++j) {
    tot += binom * partial[j];
    binom = binom * (m - j) / (j + 1.0);
  }
  const double result = std::exp(A / 2) / t * tot * std::pow(2.0, -m);
  if (!std::isfinite(result))
    throw InversionFailure("euler_invert: divergent partial sums");
  return result;
}

/// Fixed Talbot rule (Abate-Valko): r = 2M/(5t), s(theta) = r theta (cot
/// theta + i). The contour wraps the negative real axis without touching
/// it, so transforms with a branch cut there are admissible.
inline double talbot_invert(const TransformFn& fhat, double t, int m = 48) {
  if (t <= 0) throw InversionFailure("talbot_invert: t must be positive");
  if (m < 10) m = 10;
  const double r = 2.0 * m / (5.0 * t);
  double tot = 0.5 * std::exp(r * t) * fhat(cplx(r, 0)).real();
  for (int k = 1; k < m; ++k) {
    const double th = k * M_PI / m;
    const double cot = std::cos(th) / std::sin(th);
    const cplx s(r * th * cot, r * th);
    const double sigma = th + (th * cot - 1.0) * cot;
    const cplx val = std::exp(s * t) * fhat(s) * cplx(1.0, sigma);
    tot += val.real();
  }
  const double result = r / m * tot;
  if (!std::isfinite(result))
    throw InversionFailure("talbot_invert: divergent sum");
  return result;
}

inline double invert(const TransformFn& fhat, double t, const InversionSettings& st) {
  return st.algorithm == InversionAlgorithm::euler ? euler_invert(fhat, t, st.terms)
                                                   : talbot_invert(fhat, t, st.terms);
}

/// Invert with both algorithms and cross-check agreement; returns the Euler
/// value. `agree_tol` matches the oracle-level guarantee of 1e-6.
inline double invert_checked(const TransformFn& fhat, double t,
                             const InversionSettings& st = {},
                             double agree_tol = 1e-6) {
  const double e = euler_invert(fhat, t, std::max(st.terms, 25));
  const double tb = talbot_invert(fhat, t, std::max(2 * st.terms, 48));
  if (std::abs(e - tb) > agree_tol)
    throw InversionFailure("inversion cross-check failed at t=" + std::to_string(t) +
                           ": euler=" + std::to_string(e) +
                           " talbot=" + std::to_string(tb));
  return e;
}

}  // namespace mapg1
