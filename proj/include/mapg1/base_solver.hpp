#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "mapg1/map_model.hpp"
#include "mapg1/partial_fractions.hpp"

namespace mapg1 {

/// The N right-half-plane roots of det M(s) = 0, s_1 = 0 first. The zero
/// root is removed by deflating the known factor s before filtering.
inline std::vector<cplx> find_rhp_roots(const CharMatrix& cm,
                                        double tol = kRootClusterTol) {
  const int n = cm.size();
  const RationalFn det = rational_det(cm.entries).normalized();
  const Poly& num = det.num();
  if (num.degree() < 1) throw RootCountMismatch("determinant numerator is constant");
  const double scale = num.max_abs_coeff();
  if (std::abs(num.coeff(0)) > 1e-8 * scale)
    throw RootCountMismatch("determinant does not vanish at s = 0");
  const Poly deflated = num.deflate(cplx(0));
  std::vector<cplx> rhp{cplx(0)};
  if (deflated.degree() >= 1) {
    const std::vector<Root> clusters = poly_roots(deflated, tol);
    for (const Root& r : clusters) {
      if (r.value.real() <= tol * (1.0 + std::abs(r.value))) continue;
      if (r.multiplicity > 1)
        throw MultipleRoot("right-half-plane determinant root of multiplicity " +
                           std::to_string(r.multiplicity));
      for (int k = 0; k < r.multiplicity; ++k) rhp.push_back(r.value);
    }
  }
  if (static_cast<int>(rhp.size()) != n)
    throw RootCountMismatch("expected " + std::to_string(n) +
                            " right-half-plane roots, found " +
                            std::to_string(rhp.size()));
  return rhp;
}

/// Null vectors a_i of M(s_i), i >= 2, via the smallest singular direction;
/// normalized so the largest-magnitude entry equals 1.
inline std::vector<CVec> solve_a_vectors(const CharMatrix& cm,
                                         const std::vector<cplx>& roots) {
  const int n = cm.size();
  std::vector<CVec> out;
  for (std::size_t k = 1; k < roots.size(); ++k) {
    const CMat M = evaluate_point(cm.entries, roots[k]);
    Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) > 1e-7 * sv(0))
      throw NullspaceDim("M(s_i) is not singular at the computed root");
    if (n >= 2 && sv(n - 2) < 1e-7 * sv(0))
      throw NullspaceDim("nullity of M(s_i) exceeds 1");
    CVec a = svd.matrixV().col(n - 1);
    int imax = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(a(i)) > std::abs(a(imax))) imax = i;
    a /= a(imax);
    const double resid = (M * a).norm();
    if (resid > 1e-9 * (1.0 + M.norm()))
      throw NullspaceDim("null vector residual too large");
    out.push_back(a);
  }
  return out;
}

struct USolution {
  Vec u;
  double condition = 0.0;
  double residual = 0.0;  // max |u a_i| and normalization defect
};

/// The unique row vector with u Lambda^{-1} e = pi (Lambda^{-1} - mu Q) e
/// and u a_i = 0.
inline USolution solve_u(const MapModel& m, double mu, const std::vector<CVec>& a_vecs) {
  const int n = m.size();
  if (static_cast<int>(a_vecs.size()) != n - 1)
    throw SingularSystem("solve_u: need N-1 null vectors");
  CMat cols(n, n);
  for (int i = 0; i < n; ++i) cols(i, 0) = 1.0 / m.rates()(i);
  for (int k = 0; k < n - 1; ++k) cols.col(k + 1) = a_vecs[k];
  CVec rhs = CVec::Zero(n);
  rhs(0) = load_and_margin(m, mu).margin;
  Eigen::JacobiSVD<CMat> svd(cols.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(n - 1) < 1e-13 * sv(0))
    throw SingularSystem("solve_u: rank-deficient system (coincident roots?)");
  const CVec uc = svd.solve(rhs);
  USolution sol;
  sol.condition = sv(0) / sv(n - 1);
  sol.u = Vec(n);
  double imag_resid = 0;
  for (int i = 0; i < n; ++i) {
    sol.u(i) = uc(i).real();
    imag_resid = std::max(imag_resid, std::abs(uc(i).imag()));
  }
  double resid = imag_resid;
  for (const CVec& a : a_vecs) {
    cplx dot(0);
    for (int i = 0; i < n; ++i) dot += sol.u(i) * a(i);
    resid = std::max(resid, std::abs(dot));
  }
  sol.residual = resid;
  return sol;
}

/// Everything the base (eps = 0) solve produces: u, the determinant roots,
/// the null vectors, and the reduced total-workload transform.
struct WorkloadTransform {
  Vec u;
  std::vector<cplx> roots;       // s_1 = 0, then Re > 0
  std::vector<CVec> a_vecs;      // for roots 2..N
  RationalFn wlst;               // reduced total-workload LST
  std::vector<cplx> num_roots;   // -rho_j (all Re < 0)
  std::vector<cplx> den_roots;   // -y_j   (all Re < 0)
  std::vector<RationalFn> per_state;
  double u_condition = 0.0;
  double u_residual = 0.0;

  double atom() const { return wlst.at_infinity().real(); }
  std::vector<cplx> rho() const {
    std::vector<cplx> out(num_roots);
    for (cplx& z : out) z = -z;
    return out;
  }
  std::vector<cplx> y() const {
    std::vector<cplx> out(den_roots);
    for (cplx& z : out) z = -z;
    return out;
  }
};

/// Assemble w(s) = s u adj(M(s)) e / det(M(s)), cancel the zero root and
/// the right-half-plane determinant roots, and extract the reduced form.
inline WorkloadTransform workload_lst(const MapModel& m, const CharMatrix& cm,
                                      const USolution& usol,
                                      bool keep_per_state = false) {
  const int n = cm.size();
  if (m.size() != n) throw Error("workload_lst: model/matrix size mismatch");
  WorkloadTransform wt;
  wt.u = usol.u;
  wt.u_condition = usol.condition;
  wt.u_residual = usol.residual;
  wt.roots = find_rhp_roots(cm);
  wt.a_vecs = solve_a_vectors(cm, wt.roots);

  const RationalFn det = rational_det(cm.entries).normalized();
  const RationalMatrix adj = rational_adjugate(cm.entries);
  const RationalFn s = RationalFn::identity();
  RationalFn numer;
  for (int i = 0; i < n; ++i) {
    RationalFn row_sum;
    for (int j = 0; j < n; ++j) row_sum += adj(i, j);
    if (keep_per_state) {
      RationalFn wi;
      for (int j = 0; j < n; ++j) wi += cplx(usol.u(j)) * adj(j, i);
      wt.per_state.push_back((s * wi / det).normalized());
    }
    numer += cplx(usol.u(i)) * row_sum;
  }
  wt.wlst = (s * numer / det).normalized();

  // all surviving poles must lie strictly in the left half-plane
  for (const Root& p : wt.wlst.poles()) {
    if (p.value.real() > -1e-7)
      throw CancellationFailure("right-half-plane pole survived normalization");
    wt.den_roots.push_back(p.value);
    if (p.multiplicity > 1)
      throw MultipleRoot("workload transform pole of multiplicity " +
                         std::to_string(p.multiplicity));
  }
  for (const Root& z : wt.wlst.zeros()) {
    for (int k = 0; k < z.multiplicity; ++k) wt.num_roots.push_back(z.value);
  }
  const cplx at0 = wt.wlst(cplx(0));
  if (std::abs(at0 - 1.0) > 1e-8)
    throw CancellationFailure("workload transform does not normalize to 1 at s=0");
  return wt;
}

/// The base workload distribution as an atom plus exponential tail terms.
struct WorkloadDist {
  MatrixExpDist me;
  double tail(double t) const { return t < 0 ? 1.0 : me.tail(t); }
  double atom() const { return me.atom0; }
};

inline WorkloadDist invert_workload(const WorkloadTransform& wt) {
  const PartialFractions pf = partial_fractions(wt.wlst);
  WorkloadDist wd;
  wd.me.atom0 = pf.constant.real();
  for (const auto& term : pf.terms) {
    const cplx y = -term.pole;  // Re > 0
    wd.me.terms.push_back({y, term.residue / y});
  }
  return wd;
}

}  // namespace mapg1
