#pragma once

#include <vector>

#include <Eigen/Dense>

#include "mapg1/distributions.hpp"
#include "mapg1/rational_matrix.hpp"

namespace mapg1 {

/// Left fixed vector of an irreducible stochastic matrix, normalized to a
/// probability vector.
inline Vec stationary_dist(const Mat& P) {
  const int n = static_cast<int>(P.rows());
  if (P.cols() != n || n < 1) throw Reducible("stationary_dist: not square");
  // replace one balance equation by the normalization
  Mat A = P.transpose() - Mat::Identity(n, n);
  A.row(n - 1).setOnes();
  Vec b = Vec::Zero(n);
  b(n - 1) = 1.0;
  Eigen::FullPivLU<Mat> lu(A);
  if (lu.rank() < n) throw Reducible("stationary_dist: no unique fixed vector");
  Vec pi = lu.solve(b);
  for (int i = 0; i < n; ++i)
    if (pi(i) < -1e-10) throw Reducible("stationary_dist: negative component");
  return pi;
}

/// The arrival process: sojourn rates, embedded transition matrix, and the
/// per-state real-arrival probabilities, plus derived quantities.
class MapModel {
 public:
  MapModel(Vec rates, Mat trans, Vec real_prob)
      : rates_(std::move(rates)), trans_(std::move(trans)), real_prob_(std::move(real_prob)) {
    const int n = size();
    if (trans_.rows() != n || trans_.cols() != n || real_prob_.size() != n || n < 1)
      throw ConfigInvalid("MapModel: dimension mismatch");
    if (n > 8) throw ConfigInvalid("MapModel: N > 8 unsupported");
    for (int i = 0; i < n; ++i) {
      if (!(rates_(i) > 0)) throw ConfigInvalid("MapModel: rates must be positive");
      if (real_prob_(i) < 0 || real_prob_(i) > 1)
        throw ConfigInvalid("MapModel: real_prob outside [0,1]");
      if (std::abs(trans_.row(i).sum() - 1.0) > 1e-12)
        throw ConfigInvalid("MapModel: transition rows must sum to 1");
      for (int j = 0; j < n; ++j)
        if (trans_(i, j) < 0) throw ConfigInvalid("MapModel: negative transition probability");
    }
    check_irreducible();
    pi_ = stationary_dist(trans_);
    if (real_prob_.maxCoeff() <= 0)
      throw ConfigInvalid("MapModel: no state generates real arrivals");
  }

  int size() const { return static_cast<int>(rates_.size()); }
  const Vec& rates() const { return rates_; }
  const Mat& trans() const { return trans_; }
  const Vec& real_prob() const { return real_prob_; }
  const Vec& pi() const { return pi_; }

  /// pi Lambda^{-1} e — mean sojourn per embedded step.
  double mean_sojourn() const { return (pi_.array() / rates_.array()).sum(); }
  /// Real arrivals per unit time: (pi q) / (pi Lambda^{-1} e).
  double effective_rate() const { return pi_.dot(real_prob_) / mean_sojourn(); }

 private:
  void check_irreducible() const {
    const int n = size();
    // strong connectivity of the positive-transition digraph
    auto reach = [&](bool forward) {
      std::vector<bool> seen(n, false);
      std::vector<int> stack{0};
      seen[0] = true;
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < n; ++w) {
          const double p = forward ? trans_(v, w) : trans_(w, v);
          if (p > 0 && !seen[w]) {
            seen[w] = true;
            stack.push_back(w);
          }
        }
      }
      return seen;
    };
    const auto fwd = reach(true), bwd = reach(false);
    for (int i = 0; i < n; ++i)
      if (!fwd[i] || !bwd[i]) throw Reducible("MapModel: transition matrix not irreducible");
  }

  Vec rates_;
  Mat trans_;
  Vec real_prob_;
  Vec pi_;
};

struct LoadReport {
  double lambda_eff;
  double load;
  double margin;
  bool stable() const { return margin > 0; }
};

/// Effective rate, offered load and the stability margin
/// pi (Lambda^{-1} - mu Q) e for a service mean mu.
inline LoadReport load_and_margin(const MapModel& m, double mu) {
  LoadReport r;
  r.lambda_eff = m.effective_rate();
  r.load = r.lambda_eff * mu;
  r.margin = m.mean_sojourn() - mu * m.pi().dot(m.real_prob());
  return r;
}

/// The workload characteristic matrix M(s) = B_Q(s) P Lambda + s I - Lambda
/// with B_Q(s) = diag(q_i B(s) + 1 - q_i).
struct CharMatrix {
  RationalMatrix entries;
  const MapModel* model = nullptr;
  RationalFn service_lst;

  int size() const { return static_cast<int>(entries.rows()); }
};

inline CharMatrix char_matrix(const MapModel& m, const RationalLST& service) {
  const int n = m.size();
  CharMatrix cm;
  cm.model = &m;
  cm.service_lst = service.lst();
  cm.entries.resize(n, n);
  const RationalFn s = RationalFn::identity();
  for (int i = 0; i < n; ++i) {
    // per-state service transform carries the dummy-customer atom 1 - q_i
    const RationalFn bi =
        cplx(m.real_prob()(i)) * service.lst() + RationalFn::constant(1.0 - m.real_prob()(i));
    for (int j = 0; j < n; ++j) {
      RationalFn e = bi * cplx(m.trans()(i, j) * m.rates()(j));
      if (i == j) e += s - RationalFn::constant(m.rates()(i));
      cm.entries(i, j) = e.normalized();
    }
  }
  return cm;
}

/// Numeric evaluation of the characteristic matrix at a point, directly
/// from a (possibly non-rational) service transform value.
inline CMat char_matrix_at(const MapModel& m, cplx s, cplx service_value) {
  const int n = m.size();
  CMat M(n, n);
  for (int i = 0; i < n; ++i) {
    const cplx bi = m.real_prob()(i) * service_value + (1.0 - m.real_prob()(i));
    for (int j = 0; j < n; ++j) {
      M(i, j) = bi * m.trans()(i, j) * m.rates()(j);
      if (i == j) M(i, j) += s - m.rates()(i);
    }
  }
  return M;
}

}  // namespace mapg1
