#pragma once

#include <atomic>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "mapg1/base_solver.hpp"
#include "mapg1/expalg.hpp"

namespace mapg1 {

/// First-order jet about eps = 0: value + eps (dp + dh H(s)), where H is
/// the heavy-service transform. Products stay affine in H because the
/// zeroth-order part never carries H.
struct JetRF {
  RationalFn v, dp, dh;

  JetRF() = default;
  explicit JetRF(RationalFn value) : v(std::move(value)) {}
  JetRF(RationalFn value, RationalFn d_p, RationalFn d_h)
      : v(std::move(value)), dp(std::move(d_p)), dh(std::move(d_h)) {}

  JetRF& operator+=(const JetRF& o) {
    v += o.v;
    dp += o.dp;
    dh += o.dh;
    return *this;
  }
  friend JetRF operator+(JetRF a, const JetRF& b) { return a += b; }
  friend JetRF operator-(const JetRF& a) { return {-a.v, -a.dp, -a.dh}; }
  friend JetRF operator-(JetRF a, const JetRF& b) { return a += -b; }
  friend JetRF operator*(const JetRF& a, const JetRF& b) {
    return {a.v * b.v, a.v * b.dp + a.dp * b.v, a.v * b.dh + a.dh * b.v};
  }
};

}  // namespace mapg1

namespace Eigen {
template <>
struct NumTraits<mapg1::JetRF> : NumTraits<mapg1::RationalFn> {
  using Real = double;
  using NonInteger = mapg1::JetRF;
  using Nested = mapg1::JetRF;
  using Literal = double;
};
}  // namespace Eigen

namespace mapg1 {

using JetMatrix = Eigen::Matrix<JetRF, Eigen::Dynamic, Eigen::Dynamic>;

/// det and adjugate of M_eps(s) = M(s) + eps (H(s) - B_p(s)) C expanded to
/// first order in eps, with C = Q P Lambda.
struct EpsJets {
  JetRF det;
  JetMatrix adj;
};

inline EpsJets eps_jets(const MapModel& m, const RationalLST& ph) {
  const int n = m.size();
  const CharMatrix cm = char_matrix(m, ph);
  JetMatrix J(n, n);
  for (int i = 0; i < n; ++i) {
    const double ci_row = m.real_prob()(i);
    for (int j = 0; j < n; ++j) {
      const double c = ci_row * m.trans()(i, j) * m.rates()(j);
      J(i, j) = JetRF(cm.entries(i, j), -ph.lst() * cplx(c), RationalFn::constant(c));
    }
  }
  EpsJets out;
  const JetRF one(RationalFn::constant(1.0));
  out.det = generic_det(J, one);
  out.adj = generic_adjugate(J, one);
  return out;
}

/// ds_i/deps = -(d det/d eps)/(d det/d s) at (s_i, eps = 0), i = 2..N.
inline std::vector<cplx> perturb_roots(const MapModel& m, const MixtureService& mix,
                                       const WorkloadTransform& base,
                                       const EpsJets& jets) {
  (void)m;
  const RationalFn det_s = jets.det.v.derivative();
  std::vector<cplx> ds;
  for (std::size_t k = 1; k < base.roots.size(); ++k) {
    const cplx si = base.roots[k];
    const cplx ddet_deps = jets.det.dp(si) + jets.det.dh(si) * mix.heavy.lst(si);
    const cplx ddet_ds = det_s(si);
    if (std::abs(ddet_ds) < 1e-10)
      throw DegenerateRoot("determinant s-derivative vanishes at a root");
    ds.push_back(-ddet_deps / ddet_ds);
  }
  return ds;
}

/// du/deps from first-order differentiation of the defining linear system:
///   u' Lambda^{-1} e = -pi (mu_h - mu_p) Q e,
///   u' a_i + u a_i' = 0, with a_i' solving M(s_i) a_i' = -(s_i' M_s + D C) a_i.
inline Vec perturb_u(const MapModel& m, const MixtureService& mix,
                     const WorkloadTransform& base, const std::vector<cplx>& ds) {
  const int n = m.size();
  const double dmu = mix.heavy.mean() - mix.ph.mean();
  const CharMatrix cm = char_matrix(m, mix.ph);
  CVec rhs = CVec::Zero(n);
  rhs(0) = -dmu * m.pi().dot(m.real_prob());
  for (int k = 0; k < n - 1; ++k) {
    const cplx si = base.roots[k + 1];
    const CVec& a = base.a_vecs[k];
    const CMat M = evaluate_point(cm.entries, si);
    CMat Ms(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Ms(i, j) = cm.entries(i, j).derivative()(si);
    const cplx D = mix.heavy.lst(si) - mix.ph(si);
    CMat C(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        C(i, j) = m.real_prob()(i) * m.trans()(i, j) * m.rates()(j);
    const CVec b = -(ds[k] * (Ms * a) + D * (C * a));
    // min-norm particular solution; the kernel component is gauge and
    // drops out of u a_i' because u a_i = 0
    Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-8);
    const CVec aprime = svd.solve(b);
    cplx dot(0);
    for (int i = 0; i < n; ++i) dot += base.u(i) * aprime(i);
    rhs(k + 1) = -dot;
  }
  CMat cols(n, n);
  for (int i = 0; i < n; ++i) cols(i, 0) = 1.0 / m.rates()(i);
  for (int k = 0; k < n - 1; ++k) cols.col(k + 1) = base.a_vecs[k];
  Eigen::JacobiSVD<CMat> svd(cols.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(n - 1) < 1e-13 * sv(0))
    throw SingularSystem("perturb_u: rank-deficient system");
  const CVec uc = svd.solve(rhs);
  Vec up(n);
  for (int i = 0; i < n; ++i) {
    if (std::abs(uc(i).imag()) > 1e-8 * (1.0 + std::abs(uc(i).real())))
      throw SingularSystem("perturb_u: du/deps has a nonreal component");
    up(i) = uc(i).real();
  }
  return up;
}

/// K(s) = d w_eps(s)/d eps at 0 as R0(s) + R1(s) H(s).
struct AffineInH {
  RationalFn R0, R1;

  cplx eval(cplx s, cplx heavy_value) const { return R0(s) + R1(s) * heavy_value; }

  /// Algebraic limit of K at s = 0. R0 and R1 individually carry a simple
  /// pole at 0 with opposite residues; the heavy transform 1 - mu_h s + o(s)
  /// feeds its slope through R1's pole: K(0) = val(R0) + val(R1) - res(R1) mu_h.
  double value_at_zero(double mu_h) const {
    const auto [r0_res, r0_val] = laurent_at_zero(R0);
    const auto [r1_res, r1_val] = laurent_at_zero(R1);
    (void)r0_res;  // equals -r1_res when K is finite at 0
    return (r0_val + r1_val - r1_res * mu_h).real();
  }

 private:
  // (residue at the near-zero pole, regular value at 0)
  static std::pair<cplx, cplx> laurent_at_zero(const RationalFn& f) {
    const RationalFn g = f.normalized();
    if (g.is_zero()) return {cplx(0), cplx(0)};
    cplx p0(0);
    bool has = false;
    if (g.den().degree() >= 1) {
      for (const cplx& r : poly_roots_flat(g.den())) {
        if (std::abs(r) < 1e-7 && (!has || std::abs(r) < std::abs(p0))) {
          p0 = r;
          has = true;
        }
      }
    }
    if (!has) return {cplx(0), g(cplx(0))};
    const Poly d = g.den().deflate(p0);
    const cplx res = g.num()(p0) / d(p0);
    const Poly n2 = (g.num() - d * res).deflate(p0);
    return {res, n2(cplx(0)) / d(cplx(0))};
  }
};

inline AffineInH correction_transform(const MapModel& m, const MixtureService& mix,
                                      const WorkloadTransform& base) {
  const int n = m.size();
  const EpsJets jets = eps_jets(m, mix.ph);
  const std::vector<cplx> ds = perturb_roots(m, mix, base, jets);
  const Vec uprime = perturb_u(m, mix, base, ds);

  const RationalFn s = RationalFn::identity();
  RationalFn upAe, uAdp, uAdh;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const JetRF& a = jets.adj(i, j);
      upAe += cplx(uprime(i)) * a.v;
      uAdp += cplx(base.u(i)) * a.dp;
      uAdh += cplx(base.u(i)) * a.dh;
    }
  }
  AffineInH K;
  K.R0 = ((s * (upAe + uAdp) - base.wlst * jets.det.dp) / jets.det.v).normalized();
  K.R1 = ((s * uAdh - base.wlst * jets.det.dh) / jets.det.v).normalized();
  return K;
}

/// The Theorem-3 coefficient families. The exponential rates of the _j
/// families are the numerator roots rho_j of the reduced workload
/// transform (their simplicity is what the decomposition requires; the
/// transform's zeros at -rho_j keep the basis pole-compatible with K).
struct CorrectionDecomposition {
  double prefactor_ue = 1.0;
  cplx alpha{0};
  std::vector<cplx> alpha_j;
  std::vector<cplx> delta_i;
  cplx beta{0};
  std::vector<cplx> beta_j;
  std::vector<cplx> eta_i;
  cplx gamma{0};
  std::vector<cplx> gamma_j;
  std::vector<cplx> theta_i;

  std::vector<cplx> rho;      // rates of the _j families
  std::vector<cplx> s_roots;  // s_i, i >= 2
  double residual = 0.0;      // relative reconstruction residual
  double condition = 0.0;
  int rank = 0;

  int count() const { return 3 * (1 + static_cast<int>(rho.size()) +
                                  static_cast<int>(s_roots.size())); }

  std::vector<cplx> flat() const {
    std::vector<cplx> c{alpha};
    c.insert(c.end(), alpha_j.begin(), alpha_j.end());
    c.insert(c.end(), delta_i.begin(), delta_i.end());
    c.push_back(beta);
    c.insert(c.end(), beta_j.begin(), beta_j.end());
    c.insert(c.end(), eta_i.begin(), eta_i.end());
    c.push_back(gamma);
    c.insert(c.end(), gamma_j.begin(), gamma_j.end());
    c.insert(c.end(), theta_i.begin(), theta_i.end());
    return c;
  }
};

namespace detail {

/// Transform-domain basis values (B0_k, B1_k) at s, canonical order
/// alpha, alpha_j, delta_i, beta, beta_j, eta_i, gamma, gamma_j, theta_i.
/// Each pair is the ordinary Laplace transform of the k-th probabilistic
/// term, split as B0 + B1 * H(s).
inline void theorem3_basis_at(cplx s, const RationalFn& w, const RationalFn& bp,
                              const std::vector<cplx>& rho,
                              const std::vector<cplx>& s_roots,
                              const std::vector<cplx>& w_at_si,
                              const std::vector<cplx>& h_at_si,
                              const std::vector<cplx>& bp_at_si, double mu_p,
                              double mu_h, std::vector<cplx>& B0,
                              std::vector<cplx>& B1) {
  B0.clear();
  B1.clear();
  const cplx ws = w(s);
  const cplx bps = bp(s);
  const cplx s2 = s * s;
  B0.push_back((1.0 - ws) / s);
  B1.push_back(0.0);
  for (const cplx& r : rho) {
    B0.push_back((1.0 - ws * r / (s + r)) / s);
    B1.push_back(0.0);
  }
  for (std::size_t i = 0; i < s_roots.size(); ++i) {
    B0.push_back((ws - w_at_si[i]) / (s_roots[i] - s));
    B1.push_back(0.0);
  }
  for (int pw = 1; pw <= 2; ++pw) {
    const cplx wp = (pw == 1) ? ws : ws * ws;
    B0.push_back((mu_p - mu_h) / s + wp * bps / s2);
    B1.push_back(-wp / s2);
    for (const cplx& r : rho) {
      const cplx g = r / (s + r);
      B0.push_back((mu_p - mu_h) / s + wp * g * bps / s2);
      B1.push_back(-wp * g / s2);
    }
    for (std::size_t i = 0; i < s_roots.size(); ++i) {
      const cplx wi = (pw == 1) ? w_at_si[i] : w_at_si[i] * w_at_si[i];
      const cplx ci = wi * (h_at_si[i] - bp_at_si[i]) / s_roots[i];
      B0.push_back((-wp * bps / s - ci) / (s_roots[i] - s));
      B1.push_back(wp / (s * (s_roots[i] - s)));
    }
  }
}

inline std::vector<cplx> sample_grid(const double (&re)[7], const double (&im)[5]) {
  std::vector<cplx> pts;
  for (double a : re)
    for (double b : im) pts.emplace_back(a, b);
  return pts;
}

}  // namespace detail

/// Extract the Theorem-3 coefficients by a least-squares match of the
/// basis transforms against -K(s)/s (scaled by u e), jointly over the
/// rational and the H-carrying parts. The system is rank-deficient for
/// small fixtures (the coefficients are then not unique); the minimum-norm
/// solution is returned with rank, conditioning and the reconstruction
/// residual, and BasisDeficiency is raised when the residual exceeds 1e-7.
inline CorrectionDecomposition theorem3_decompose(const AffineInH& K,
                                                  const WorkloadTransform& base,
                                                  const MixtureService& mix) {
  CorrectionDecomposition dec;
  dec.prefactor_ue = base.atom();
  dec.rho = base.rho();
  dec.s_roots.assign(base.roots.begin() + 1, base.roots.end());
  const RationalFn& w = base.wlst;
  const RationalFn bp = mix.ph.lst();
  const double mu_p = mix.ph.mean();
  const double mu_h = mix.heavy.mean();

  std::vector<cplx> w_si, h_si, bp_si;
  for (const cplx& si : dec.s_roots) {
    w_si.push_back(w(si));
    h_si.push_back(mix.heavy.lst(si));
    bp_si.push_back(bp(si));
  }

  static constexpr double fit_re[7] = {0.11, 0.37, 0.83, 1.7, 2.9, 5.3, 8.9};
  static constexpr double fit_im[5] = {-3.1, -1.2, 0.0, 0.55, 2.8};
  static constexpr double chk_re[7] = {0.23, 0.61, 1.3, 2.2, 4.1, 6.3, 7.1};
  static constexpr double chk_im[5] = {-1.7, -0.6, 0.3, 1.1, 2.3};
  const std::vector<cplx> fit_pts = detail::sample_grid(fit_re, fit_im);

  const int ncoef = dec.count();
  const int rows = 2 * static_cast<int>(fit_pts.size());
  CMat A(rows, ncoef);
  CVec b(rows);
  std::vector<cplx> B0, B1;
  const double ue = dec.prefactor_ue;
  for (std::size_t p = 0; p < fit_pts.size(); ++p) {
    const cplx s = fit_pts[p];
    detail::theorem3_basis_at(s, w, bp, dec.rho, dec.s_roots, w_si, h_si, bp_si,
                              mu_p, mu_h, B0, B1);
    for (int k = 0; k < ncoef; ++k) {
      A(2 * p, k) = B0[k];
      A(2 * p + 1, k) = B1[k];
    }
    b(2 * p) = -ue * K.R0(s) / s;
    b(2 * p + 1) = -ue * K.R1(s) / s;
  }
  // column scaling stabilizes the pseudo-inverse
  Vec scale(ncoef);
  for (int k = 0; k < ncoef; ++k) scale(k) = std::max(A.col(k).norm(), 1e-30);
  for (int k = 0; k < ncoef; ++k) A.col(k) /= scale(k);
  Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  CVec c = svd.solve(b);
  for (int k = 0; k < ncoef; ++k) c(k) /= scale(k);
  dec.rank = static_cast<int>(svd.rank());
  const auto& sv = svd.singularValues();
  dec.condition = sv(0) / sv(std::min<int>(svd.rank(), ncoef) - 1);

  // unpack in canonical order
  int at = 0;
  const int mr = static_cast<int>(dec.rho.size());
  const int ni = static_cast<int>(dec.s_roots.size());
  auto take = [&]() { return c(at++); };
  dec.alpha = take();
  for (int j = 0; j < mr; ++j) dec.alpha_j.push_back(take());
  for (int i = 0; i < ni; ++i) dec.delta_i.push_back(take());
  dec.beta = take();
  for (int j = 0; j < mr; ++j) dec.beta_j.push_back(take());
  for (int i = 0; i < ni; ++i) dec.eta_i.push_back(take());
  dec.gamma = take();
  for (int j = 0; j < mr; ++j) dec.gamma_j.push_back(take());
  for (int i = 0; i < ni; ++i) dec.theta_i.push_back(take());

  // reconstruction residual at fresh points
  const std::vector<cplx> chk_pts = detail::sample_grid(chk_re, chk_im);
  double resid = 0.0;
  const std::vector<cplx> cf = dec.flat();
  for (const cplx& s : chk_pts) {
    detail::theorem3_basis_at(s, w, bp, dec.rho, dec.s_roots, w_si, h_si, bp_si,
                              mu_p, mu_h, B0, B1);
    cplx r0(0), r1(0);
    for (int k = 0; k < ncoef; ++k) {
      r0 += cf[k] * B0[k];
      r1 += cf[k] * B1[k];
    }
    const cplx t0 = -ue * K.R0(s) / s;
    const cplx t1 = -ue * K.R1(s) / s;
    resid = std::max(resid, std::abs(r0 - t0) / (1.0 + std::abs(t0)));
    resid = std::max(resid, std::abs(r1 - t1) / (1.0 + std::abs(t1)));
  }
  dec.residual = resid;
  if (resid > 1e-7)
    throw BasisDeficiency("theorem3_decompose: reconstruction residual " +
                          std::to_string(resid));
  return dec;
}

/// Termwise time-domain evaluator for the correction
///   corr(t) = L^{-1}{w k}(t) = (1/ue) sum_k c_k T_k(t),
/// PH-side terms by exponential algebra, heavy-side terms by quadrature
/// against the cached tails.
class CorrectionEvaluator {
 public:
  CorrectionEvaluator(const WorkloadTransform& base, const MixtureService& mix,
                      CorrectionDecomposition dec)
      : dec_(std::move(dec)), heavy_(mix.heavy), mu_p_(mix.ph.mean()),
        mu_h_(mix.heavy.mean()) {
    const RationalFn& w = base.wlst;
    const RationalFn s = RationalFn::identity();
    // stationary-excess transform of the PH part: (1 - B_p(s))/(mu_p s)
    const RationalFn pe =
        ((RationalFn::constant(1.0) - mix.ph.lst()) / (cplx(mu_p_) * s)).normalized();
    const int mr = static_cast<int>(dec_.rho.size());
    for (int pw = 1; pw <= 2; ++pw) {
      const RationalFn wp = (pw == 1) ? w : (w * w);
      std::vector<ExpPoly> plain, with_pe;
      plain.push_back(ExpPoly::from_lst(wp.normalized()));
      with_pe.push_back(ExpPoly::from_lst((wp * pe).normalized()));
      for (int j = 0; j < mr; ++j) {
        const RationalFn g(Poly({dec_.rho[j]}), Poly({dec_.rho[j], cplx(1)}));
        plain.push_back(ExpPoly::from_lst((wp * g).normalized()));
        with_pe.push_back(ExpPoly::from_lst((wp * g * pe).normalized()));
      }
      ep_[pw - 1] = std::move(plain);
      epp_[pw - 1] = std::move(with_pe);
    }
  }

  double operator()(double t) const {
    const int mr = static_cast<int>(dec_.rho.size());
    const int ni = static_cast<int>(dec_.s_roots.size());
    cplx acc = dec_.alpha * ep_[0][0].tail(t);
    for (int j = 0; j < mr; ++j) acc += dec_.alpha_j[j] * ep_[0][j + 1].tail(t);
    for (int i = 0; i < ni; ++i)
      acc += dec_.delta_i[i] * ep_[0][0].interval(dec_.s_roots[i], t);
    acc += pair_term(dec_.beta, 1, 0, t);
    for (int j = 0; j < mr; ++j) acc += pair_term(dec_.beta_j[j], 1, j + 1, t);
    for (int i = 0; i < ni; ++i) acc += interval_pair(dec_.eta_i[i], 1, i, t);
    acc += pair_term(dec_.gamma, 2, 0, t);
    for (int j = 0; j < mr; ++j) acc += pair_term(dec_.gamma_j[j], 2, j + 1, t);
    for (int i = 0; i < ni; ++i) acc += interval_pair(dec_.theta_i[i], 2, i, t);
    acc /= dec_.prefactor_ue;
    const double im = std::abs(acc.imag());
    if (im > imag_residual_) imag_residual_ = im;
    return acc.real();
  }

  double imag_residual() const { return imag_residual_; }

 private:
  cplx pair_term(cplx coeff, int pw, int j, double t) const {
    if (std::abs(coeff) < 1e-14) return cplx(0);
    return coeff * (mu_p_ * epp_[pw - 1][j].tail(t) -
                    mu_h_ * heavy_excess_plus(ep_[pw - 1][j], heavy_, t));
  }
  cplx interval_pair(cplx coeff, int pw, int i, double t) const {
    if (std::abs(coeff) < 1e-14) return cplx(0);
    const cplx si = dec_.s_roots[i];
    return coeff * (mu_p_ * epp_[pw - 1][0].interval(si, t) -
                    mu_h_ * heavy_excess_interval(ep_[pw - 1][0], heavy_, si, t));
  }

  CorrectionDecomposition dec_;
  HeavyComponent heavy_;
  double mu_p_, mu_h_;
  std::vector<ExpPoly> ep_[2], epp_[2];  // [pw-1][j], j = 0 plain, then rho_j
  mutable double imag_residual_ = 0.0;
};

/// P(V_eps > t) ~= P(V > t) + eps corr(t), clamped into [0, 1] with a
/// warning counter for values escaping [-0.01, 1.01].
class CorrectedTail {
 public:
  CorrectedTail(WorkloadDist base, double eps, std::function<double(double)> corr)
      : base_(std::move(base)), eps_(eps), corr_(std::move(corr)) {}

  double raw(double t) const {
    if (eps_ == 0.0) return base_.tail(t);  // bitwise-identical degenerate case
    return base_.tail(t) + eps_ * corr_(t);
  }
  double operator()(double t) const {
    const double v = raw(t);
    if (v < -0.01 || v > 1.01) ++warnings_;
    return std::clamp(v, 0.0, 1.0);
  }
  double correction(double t) const { return eps_ == 0.0 ? 0.0 : corr_(t); }
  const WorkloadDist& base() const { return base_; }
  double eps() const { return eps_; }
  int warnings() const { return warnings_; }

 private:
  WorkloadDist base_;
  double eps_;
  std::function<double(double)> corr_;
  mutable std::atomic<int> warnings_{0};
};

inline CorrectedTail make_corrected_tail(const WorkloadTransform& wt,
                                         const WorkloadDist& wd,
                                         const MixtureService& mix,
                                         const CorrectionDecomposition& dec) {
  auto eval = std::make_shared<CorrectionEvaluator>(wt, mix, dec);
  return CorrectedTail(wd, mix.eps, [eval](double t) { return (*eval)(t); });
}

/// One-shot convenience: corrected tail value at t from the decomposition.
inline double corrected_tail(const WorkloadTransform& wt, const WorkloadDist& wd,
                             const MixtureService& mix,
                             const CorrectionDecomposition& dec, double t) {
  return make_corrected_tail(wt, wd, mix, dec)(t);
}

/// Poisson-arrivals fast path:
///   P(V>t) + eps lambda/(1-lambda mu_p) [ (mu_p-mu_h) P(V>t)
///       + mu_h P(V+V'+H^e>t) - mu_p P(V+V'+P^e>t) ].
class Mg1CorollaryTail {
 public:
  Mg1CorollaryTail(double lambda, const MixtureService& mix,
                   const WorkloadTransform& base, const WorkloadDist& dist)
      : lambda_(lambda), eps_(mix.eps), heavy_(mix.heavy), mu_p_(mix.ph.mean()),
        mu_h_(mix.heavy.mean()), dist_(dist) {
    const RationalFn s = RationalFn::identity();
    const RationalFn pe =
        ((RationalFn::constant(1.0) - mix.ph.lst()) / (cplx(mu_p_) * s)).normalized();
    const RationalFn w2 = base.wlst * base.wlst;
    vv_ = ExpPoly::from_lst(w2.normalized());
    vvpe_ = ExpPoly::from_lst((w2 * pe).normalized());
  }

  double operator()(double t) const {
    const double base = dist_.tail(t);
    if (eps_ == 0.0) return base;
    const double pref = lambda_ / (1.0 - lambda_ * mu_p_);
    const cplx corr = (mu_p_ - mu_h_) * base +
                      mu_h_ * heavy_excess_plus(vv_, heavy_, t) -
                      mu_p_ * vvpe_.tail(t);
    return base + eps_ * pref * corr.real();
  }

 private:
  double lambda_, eps_;
  HeavyComponent heavy_;
  double mu_p_, mu_h_;
  WorkloadDist dist_;
  ExpPoly vv_, vvpe_;
};

inline double mg1_corollary_tail(double lambda, const MixtureService& mix,
                                 const WorkloadTransform& base,
                                 const WorkloadDist& dist, double t) {
  return Mg1CorollaryTail(lambda, mix, base, dist)(t);
}

}  // namespace mapg1
