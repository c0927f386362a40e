#pragma once

#include <utility>
#include <vector>

#include "mapg1/poly.hpp"

namespace mapg1 {

/// Ratio of two complex-coefficient polynomials. Normalization makes the
/// denominator monic and cancels num/den root pairs that coincide within
/// the clustering tolerance (by synthetic division, not coefficient
/// subtraction).
class RationalFn {
 public:
  RationalFn() : num_(), den_({cplx(1)}) {}
  RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("RationalFn: zero denominator");
    make_monic();
  }
  static RationalFn constant(cplx c) { return RationalFn(Poly({c}), Poly({cplx(1)})); }
  static RationalFn identity() { return RationalFn(Poly::identity(), Poly({cplx(1)})); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  cplx operator()(cplx s) const { return num_(s) / den_(s); }

  /// Limit at s -> infinity (0 if deg num < deg den, ratio of leading
  /// coefficients if equal; throws if the function diverges).
  cplx at_infinity() const {
    if (num_.degree() > den_.degree())
      throw Error("RationalFn: diverges at infinity");
    if (num_.degree() < den_.degree()) return cplx(0);
    return num_.leading() / den_.leading();
  }

  RationalFn derivative() const {
    return RationalFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFn operator-(const RationalFn& a) { return RationalFn(-a.num_, a.den_); }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFn operator*(const RationalFn& a, cplx c) {
    return RationalFn(a.num_ * c, a.den_);
  }
  friend RationalFn operator*(cplx c, const RationalFn& a) { return a * c; }
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
    if (b.num_.is_zero()) throw Error("RationalFn: division by zero function");
    return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
  RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
  RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }

  /// Cancel common num/den roots and return the reduced function.
  /// Cancellation works by synthetic division at the clustered denominator
  /// roots (cluster means stay O(eps)-accurate even when companion
  /// eigenvalues of a multiple root split by O(sqrt(eps))); a numerator
  /// root is considered coincident when the Newton step |num(p)/num'(p)|
  /// falls inside the clustering metric.
  RationalFn normalized(double tol = kRootClusterTol) const {
    if (num_.is_zero()) return RationalFn(Poly(), Poly({cplx(1)}));
    if (den_.degree() == 0 || num_.degree() == 0) {
      RationalFn r(*this);
      r.make_monic();
      return r;
    }
    Poly n = num_;
    Poly d = den_;
    const std::vector<Root> dclusters = cluster_roots(poly_roots_flat(d), tol);
    for (const Root& dr : dclusters) {
      for (int k = 0; k < dr.multiplicity && n.degree() >= 1; ++k) {
        const cplx np = n(dr.value);
        const double coeff_scale =
            n.max_abs_coeff() * std::pow(1.0 + std::abs(dr.value), n.degree());
        bool coincide = std::abs(np) <= 1e-12 * coeff_scale;
        if (!coincide) {
          const cplx npd = n.derivative()(dr.value);
          coincide = std::abs(npd) > 0 &&
                     std::abs(np / npd) < tol * (1.0 + std::abs(dr.value));
        }
        if (!coincide) break;
        n = n.deflate(dr.value);
        d = d.deflate(dr.value);
      }
    }
    return RationalFn(std::move(n), std::move(d));
  }

  /// Poles (clustered roots of the denominator of the normalized form).
  std::vector<Root> poles(double tol = kRootClusterTol) const {
    RationalFn r = normalized(tol);
    if (r.den().degree() < 1) return {};
    return poly_roots(r.den(), tol);
  }
  std::vector<Root> zeros(double tol = kRootClusterTol) const {
    RationalFn r = normalized(tol);
    if (r.num().degree() < 1) return {};
    return poly_roots(r.num(), tol);
  }

 private:
  void make_monic() {
    if (den_.is_zero()) throw Error("RationalFn: zero denominator");
    const cplx lead = den_.leading();
    den_ = den_ * (cplx(1) / lead);
    num_ = num_ * (cplx(1) / lead);
  }

  Poly num_;
  Poly den_;
};

}  // namespace mapg1
