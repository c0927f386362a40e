#pragma once

#include <functional>
#include <vector>

#include "mapg1/corrected.hpp"
#include "mapg1/inversion.hpp"

namespace mapg1 {

/// "Exact" mixture-workload solution: right-half-plane roots of the full
/// mixture determinant (damped Newton seeded at base root + eps ds/deps),
/// the vector u_eps from the defining linear system with the mixture
/// transform, and the tail by numerical inversion of the exact transform.
class ExactMixtureSolution {
 public:
  ExactMixtureSolution(const MapModel& m, const MixtureService& mix,
                       const WorkloadTransform& base,
                       InversionSettings settings = {})
      : model_(m), mix_(mix), settings_(settings) {
    const auto rep = load_and_margin(m, mix.mean());
    if (!rep.stable()) throw Unstable("exact_mixture: mixture model unstable");
    load_ = rep.load;

    roots_.push_back(cplx(0));
    if (m.size() > 1) {
      const EpsJets jets = eps_jets(m, mix.ph);
      const std::vector<cplx> ds = perturb_roots(m, mix, base, jets);
      for (std::size_t k = 1; k < base.roots.size(); ++k)
        roots_.push_back(refine_root(base.roots[k] + mix.eps * ds[k - 1]));
    }
    solve_u_eps(rep.margin);
  }

  const std::vector<cplx>& roots() const { return roots_; }
  const Vec& u() const { return u_; }
  double load() const { return load_; }

  cplx wlst(cplx s) const {
    const CMat M = char_matrix_at(model_, s, mix_.lst(s));
    const CVec x = M.partialPivLu().solve(CVec::Ones(model_.size()));
    cplx v(0);
    for (int i = 0; i < model_.size(); ++i) v += u_(i) * x(i);
    return s * v;
  }

  double tail(double t) const {
    if (t <= 0) return load_;
    TransformFn tf = [this](cplx s) { return (1.0 - wlst(s)) / s; };
    return invert(tf, t, settings_);
  }

  std::vector<double> tail_grid(const std::vector<double>& ts) const {
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) out.push_back(tail(t));
    return out;
  }

  /// |det| at the refined roots (convergence certificate).
  double max_det_residual() const {
    double m = 0;
    for (const cplx& r : roots_) m = std::max(m, std::abs(det_at(r)));
    return m;
  }

 private:
  cplx det_at(cplx s) const {
    return char_matrix_at(model_, s, mix_.lst(s)).determinant();
  }

  cplx refine_root(cplx seed) const {
    cplx s = seed;
    cplx f = det_at(s);
    const double scale = 1.0 + std::abs(f);
    for (int it = 0; it < 60; ++it) {
      if (std::abs(f) < 1e-11 * scale) return s;
      const double h = 1e-7 * (1.0 + std::abs(s));
      const cplx fp = (det_at(s + h) - det_at(s - h)) / (2 * h);
      if (std::abs(fp) < 1e-14)
        throw NewtonDivergence("exact_mixture: vanishing determinant derivative");
      cplx step = f / fp;
      // damping: halve until |det| does not increase
      for (int half = 0; half < 30; ++half) {
        const cplx cand = s - step;
        const cplx fc = det_at(cand);
        if (std::abs(fc) < std::abs(f) || half == 29) {
          s = cand;
          f = fc;
          break;
        }
        step *= 0.5;
      }
    }
    if (std::abs(f) >= 1e-10 * scale)
      throw NewtonDivergence("exact_mixture: Newton did not converge, |det| = " +
                             std::to_string(std::abs(f)));
    return s;
  }

  void solve_u_eps(double margin) {
    const int n = model_.size();
    CMat cols(n, n);
    for (int i = 0; i < n; ++i) cols(i, 0) = 1.0 / model_.rates()(i);
    for (int k = 1; k < n; ++k) {
      const CMat M = char_matrix_at(model_, roots_[k], mix_.lst(roots_[k]));
      Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      if (sv(n - 1) > 1e-6 * sv(0))
        throw NullspaceDim("exact_mixture: refined root is not singular enough");
      CVec a = svd.matrixV().col(n - 1);
      int imax = 0;
      for (int i = 1; i < n; ++i)
        if (std::abs(a(i)) > std::abs(a(imax))) imax = i;
      a /= a(imax);
      cols.col(k) = a;
    }
    CVec rhs = CVec::Zero(n);
    rhs(0) = margin;
    const CVec uc = cols.transpose().partialPivLu().solve(rhs);
    u_ = Vec(n);
    for (int i = 0; i < n; ++i) u_(i) = uc(i).real();
  }

  const MapModel& model_;
  MixtureService mix_;
  InversionSettings settings_;
  std::vector<cplx> roots_;
  Vec u_;
  double load_ = 0;
};

/// Tail values of the exact mixture workload on a grid (Table-1 style).
inline std::vector<double> exact_mixture_tail(const MapModel& m,
                                              const MixtureService& mix,
                                              const std::vector<double>& ts,
                                              InversionSettings settings = {}) {
  const CharMatrix cm = char_matrix(m, mix.ph);
  const auto usol = solve_u(m, mix.ph.mean(), solve_a_vectors(cm, find_rhp_roots(cm)));
  const WorkloadTransform base = workload_lst(m, cm, usol);
  return ExactMixtureSolution(m, mix, base, settings).tail_grid(ts);
}

}  // namespace mapg1
