#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "mapg1/errors.hpp"
#include "mapg1/types.hpp"

namespace mapg1 {

/// Univariate polynomial with coefficients in ascending degree order.
/// Normalized form keeps the leading coefficient nonzero; the zero
/// polynomial is represented by an empty coefficient vector.
template <typename Scalar>
class PolyT {
 public:
  PolyT() = default;
  PolyT(std::initializer_list<Scalar> c) : coef_(c) { trim(); }
  explicit PolyT(std::vector<Scalar> c) : coef_(std::move(c)) { trim(); }

  static PolyT constant(Scalar c) { return PolyT({c}); }
  static PolyT identity() { return PolyT({Scalar(0), Scalar(1)}); }  // s

  /// Monic polynomial with the given roots.
  static PolyT from_roots(const std::vector<Scalar>& roots) {
    PolyT p({Scalar(1)});
    for (const Scalar& r : roots) p = p * PolyT({-r, Scalar(1)});
    return p;
  }

  bool is_zero() const { return coef_.empty(); }
  int degree() const { return static_cast<int>(coef_.size()) - 1; }
  const std::vector<Scalar>& coeffs() const { return coef_; }

  Scalar coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coef_.size())) ? coef_[k] : Scalar(0);
  }
  Scalar leading() const { return coef_.empty() ? Scalar(0) : coef_.back(); }

  Scalar operator()(Scalar s) const {
    Scalar v(0);
    for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) v = v * s + *it;
    return v;
  }

  PolyT derivative() const {
    if (coef_.size() <= 1) return PolyT();
    std::vector<Scalar> d(coef_.size() - 1);
    for (std::size_t k = 1; k < coef_.size(); ++k)
      d[k - 1] = coef_[k] * Scalar(static_cast<double>(k));
    return PolyT(std::move(d));
  }

  double max_abs_coeff() const {
    double m = 0;
    for (const Scalar& c : coef_) m = std::max(m, std::abs(c));
    return m;
  }

  PolyT& operator+=(const PolyT& o) {
    if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), Scalar(0));
    for (std::size_t k = 0; k < o.coef_.size(); ++k) coef_[k] += o.coef_[k];
    trim();
    return *this;
  }
  PolyT& operator-=(const PolyT& o) {
    if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), Scalar(0));
    for (std::size_t k = 0; k < o.coef_.size(); ++k) coef_[k] -= o.coef_[k];
    trim();
    return *this;
  }
  friend PolyT operator+(PolyT a, const PolyT& b) { return a += b; }
  friend PolyT operator-(PolyT a, const PolyT& b) { return a -= b; }
  friend PolyT operator-(const PolyT& a) {
    std::vector<Scalar> c(a.coef_);
    for (Scalar& x : c) x = -x;
    return PolyT(std::move(c));
  }

  friend PolyT operator*(const PolyT& a, const PolyT& b) {
    if (a.is_zero() || b.is_zero()) return PolyT();
    std::vector<Scalar> c(a.coef_.size() + b.coef_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.coef_.size(); ++i)
      for (std::size_t j = 0; j < b.coef_.size(); ++j)
        c[i + j] += a.coef_[i] * b.coef_[j];
    return PolyT(std::move(c));
  }
  friend PolyT operator*(const PolyT& a, Scalar s) {
    std::vector<Scalar> c(a.coef_);
    for (Scalar& x : c) x *= s;
    return PolyT(std::move(c));
  }
  friend PolyT operator*(Scalar s, const PolyT& a) { return a * s; }

  /// Synthetic division by (s - root); the remainder is discarded.
  PolyT deflate(Scalar root) const {
    if (degree() < 1) return PolyT();
    std::vector<Scalar> q(coef_.size() - 1);
    Scalar carry = coef_.back();
    for (int k = degree() - 1; k >= 0; --k) {
      q[k] = carry;
      carry = coef_[k] + root * carry;
    }
    return PolyT(std::move(q));
  }

  PolyT monic() const {
    if (is_zero()) return PolyT();
    return *this * (Scalar(1) / leading());
  }

 private:
  void trim() {
    const double scale = max_abs_coeff();
    const double tol = scale * 1e-14;
    while (!coef_.empty() && std::abs(coef_.back()) <= tol) coef_.pop_back();
    if (coef_.size() == 1 && std::abs(coef_[0]) <= tol) coef_.clear();
  }

  std::vector<Scalar> coef_;
};

using Poly = PolyT<cplx>;

/// Root of a polynomial together with its multiplicity flag.
struct Root {
  cplx value;
  int multiplicity = 1;
};

/// All roots (counted with multiplicity) via eigenvalues of the balanced
/// companion matrix. Throws ZeroPolynomial for the zero polynomial and
/// requires degree >= 1.
inline std::vector<cplx> poly_roots_flat(const Poly& p) {
  if (p.is_zero()) throw ZeroPolynomial("poly_roots: zero polynomial");
  const int n = p.degree();
  if (n < 1) throw ZeroPolynomial("poly_roots: degree 0 has no roots");
  CMat companion = CMat::Zero(n, n);
  const cplx lead = p.leading();
  for (int i = 0; i < n; ++i) {
    if (i + 1 < n) companion(i + 1, i) = 1.0;
    companion(i, n - 1) = -p.coeff(i) / lead;
  }
  Eigen::ComplexEigenSolver<CMat> es(companion, /*computeEigenvectors=*/false);
  std::vector<cplx> roots(n);
  for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()(i);
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

/// Cluster a flat root list into (value, multiplicity) groups using the
/// relative metric |r1 - r2| < tol (1 + |r1|). Cluster values are averaged.
inline std::vector<Root> cluster_roots(const std::vector<cplx>& roots,
                                       double tol = kRootClusterTol) {
  std::vector<Root> out;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    cplx sum = roots[i];
    int count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && roots_coincide(roots[i], roots[j], tol)) {
        sum += roots[j];
        ++count;
        used[j] = true;
      }
    }
    out.push_back({sum / static_cast<double>(count), count});
  }
  return out;
}

inline std::vector<Root> poly_roots(const Poly& p, double tol = kRootClusterTol) {
  return cluster_roots(poly_roots_flat(p), tol);
}

}  // namespace mapg1
