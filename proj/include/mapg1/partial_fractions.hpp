#pragma once

#include <vector>

#include "mapg1/rational.hpp"

namespace mapg1 {

/// Strict partial-fraction form for the analytic workload inversion:
/// constant + sum of residue/(s - pole) with all poles simple.
struct PartialFractions {
  struct Term {
    cplx pole;
    cplx residue;
    int order = 1;  // always 1 here; multiple poles are rejected
  };
  cplx constant{0.0};
  std::vector<Term> terms;

  cplx operator()(cplx s) const {
    cplx v = constant;
    for (const Term& t : terms) v += t.residue / (s - t.pole);
    return v;
  }
};

/// Decompose f with deg(num) <= deg(den) and simple poles only.
/// Residues are num(p)/den'(p); the constant is the limit at infinity.
inline PartialFractions partial_fractions(const RationalFn& f,
                                          double tol = kRootClusterTol) {
  RationalFn g = f.normalized(tol);
  if (g.num().degree() > g.den().degree())
    throw Error("partial_fractions: numerator degree exceeds denominator");
  PartialFractions pf;
  pf.constant = g.at_infinity();
  if (g.den().degree() < 1) return pf;
  const std::vector<Root> poles = poly_roots(g.den(), tol);
  const Poly dden = g.den().derivative();
  for (const Root& p : poles) {
    if (p.multiplicity > 1)
      throw MultiplePole("partial_fractions: pole of multiplicity " +
                         std::to_string(p.multiplicity));
    pf.terms.push_back({p.value, g.num()(p.value) / dden(p.value), 1});
  }
  return pf;
}

/// Laurent expansion terms of a rational function about its poles, higher
/// orders allowed: f(s) = entire part + sum_k sum_{m=1..o_k} c_{k,m}/(s-p_k)^m.
/// Used by the correction layer, where squared workload transforms produce
/// double poles.
struct PoleExpansion {
  struct Term {
    cplx pole;
    std::vector<cplx> laurent;  // laurent[m-1] = coefficient of (s-p)^{-m}
  };
  cplx constant{0.0};
  std::vector<Term> terms;

  cplx operator()(cplx s) const {
    cplx v = constant;
    for (const Term& t : terms) {
      cplx d = s - t.pole;
      cplx powinv = 1.0 / d;
      for (const cplx& c : t.laurent) {
        v += c * powinv;
        powinv /= d;
      }
    }
    return v;
  }
};

inline PoleExpansion pole_expansion(const RationalFn& f,
                                    double tol = kRootClusterTol) {
  RationalFn g = f.normalized(tol);
  if (g.num().degree() > g.den().degree())
    throw Error("pole_expansion: numerator degree exceeds denominator");
  PoleExpansion pe;
  pe.constant = g.at_infinity();
  if (g.den().degree() < 1) return pe;
  const std::vector<Root> poles = poly_roots(g.den(), tol);
  for (const Root& p : poles) {
    const int m = p.multiplicity;
    // h(s) = f(s) (s-p)^m with the factor removed from the denominator.
    Poly den = g.den();
    for (int k = 0; k < m; ++k) den = den.deflate(p.value);
    RationalFn h(g.num(), den);
    // Laurent coefficients c_{m-j} = h^{(j)}(p)/j!, j = 0..m-1.
    PoleExpansion::Term term;
    term.pole = p.value;
    term.laurent.assign(m, cplx(0));
    RationalFn hj = h;
    double fact = 1.0;
    for (int j = 0; j < m; ++j) {
      if (j > 0) {
        hj = hj.derivative();
        fact *= j;
      }
      term.laurent[m - 1 - j] = hj(p.value) / fact;
    }
    pe.terms.push_back(std::move(term));
  }
  return pe;
}

}  // namespace mapg1
