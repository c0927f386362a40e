#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mapg1/inversion.hpp"
#include "mapg1/partial_fractions.hpp"
#include "mapg1/quadrature.hpp"
#include "mapg1/rational.hpp"

namespace mapg1 {

/// Distribution with a rational Laplace-Stieltjes transform (the
/// matrix-exponential class; every phase-type law lives here).
class RationalLST {
 public:
  RationalLST() = default;
  explicit RationalLST(RationalFn lst) : lst_(lst.normalized()) {
    const cplx at0 = lst_(cplx(0));
    if (std::abs(at0 - 1.0) > 1e-9)
      throw Error("RationalLST: transform value at 0 is not 1");
    if (lst_.num().degree() > lst_.den().degree())
      throw Error("RationalLST: transform unbounded as s -> infinity");
    mean_ = -lst_.derivative()(cplx(0)).real();
    if (!(mean_ > 0) || !std::isfinite(mean_))
      throw Error("RationalLST: mean must be finite and positive");
  }

  static RationalLST exponential(double rate) {
    return RationalLST(RationalFn(Poly({cplx(rate)}), Poly({cplx(rate), cplx(1)})));
  }
  static RationalLST erlang(int k, double rate) {
    RationalFn stage(Poly({cplx(rate)}), Poly({cplx(rate), cplx(1)}));
    RationalFn f = RationalFn::constant(1.0);
    for (int i = 0; i < k; ++i) f *= stage;
    return RationalLST(f);
  }
  static RationalLST hyperexponential(const std::vector<double>& probs,
                                      const std::vector<double>& rates) {
    if (probs.size() != rates.size() || probs.empty())
      throw Error("hyperexponential: probs/rates size mismatch");
    RationalFn f;
    for (std::size_t i = 0; i < probs.size(); ++i)
      f += cplx(probs[i]) * RationalFn(Poly({cplx(rates[i])}), Poly({cplx(rates[i]), cplx(1)}));
    return RationalLST(f);
  }

  const RationalFn& lst() const { return lst_; }
  cplx operator()(cplx s) const { return lst_(s); }
  double mean() const { return mean_; }

 private:
  RationalFn lst_ = RationalFn::constant(1.0);
  double mean_ = 1.0;
};

/// Atom at zero plus a finite mixture of (possibly complex-conjugate)
/// exponential terms: tail(t) = sum_k weight_k e^{-rate_k t}.
struct MatrixExpDist {
  double atom0 = 0.0;
  struct Term {
    cplx rate;    // Re > 0
    cplx weight;  // tail weight
  };
  std::vector<Term> terms;

  double tail(double t) const {
    cplx v(0);
    for (const Term& term : terms) v += term.weight * std::exp(-term.rate * t);
    if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v.real())) + 1e-12)
      throw Error("MatrixExpDist: tail has nonvanishing imaginary part");
    return v.real();
  }
  double tail_at_zero() const { return tail(0.0); }
};

namespace detail {

/// Monotone cubic (Fritsch-Carlson) interpolation through (x, y) with x
/// strictly increasing.
class Pchip {
 public:
  Pchip() = default;
  Pchip(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    slopes_.assign(n, 0.0);
    if (n < 2) return;
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
      d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    slopes_[0] = d[0];
    slopes_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (d[i - 1] * d[i] <= 0) {
        slopes_[i] = 0.0;
      } else {
        const double w1 = 2 * (x_[i + 1] - x_[i]) + (x_[i] - x_[i - 1]);
        const double w2 = (x_[i + 1] - x_[i]) + 2 * (x_[i] - x_[i - 1]);
        slopes_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
      }
    }
  }

  double operator()(double x) const {
    if (x_.empty()) return 0.0;
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double u = (x - x_[i]) / h;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    const double h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u);
    const double h11 = u * u * (u - 1);
    return h00 * y_[i] + h10 * h * slopes_[i] + h01 * y_[i + 1] + h11 * h * slopes_[i + 1];
  }

  bool empty() const { return x_.empty(); }

 private:
  std::vector<double> x_, y_, slopes_;
};

}  // namespace detail

enum class HeavyKind { pareto, aw_sqrt, table };

/// Heavy-tailed service component defined through a complex-capable LST,
/// its mean, and tail evaluators for H and the stationary excess H^e.
/// For aw_sqrt and table kinds the tails come from dual numerical Laplace
/// inversion cached on a log grid with monotone interpolation.
class HeavyComponent {
 public:
  HeavyKind kind() const { return kind_; }
  double mean() const { return mean_; }

  cplx lst(cplx s) const {
    if (s.real() < -1e-12 && kind_ == HeavyKind::aw_sqrt)
      throw BranchViolation("aw_sqrt transform requested left of the branch cut");
    return lst_(s);
  }
  cplx lst_derivative(cplx s) const {
    const double h = 1e-6 * (1.0 + std::abs(s));
    return (lst_(s + h) - lst_(s - h)) / (2 * h);
  }
  double tail(double t) const { return t <= 0 ? 1.0 : tail_(t); }
  double excess_tail(double t) const { return t <= 0 ? 1.0 : excess_(t); }

  /// Pareto(shape a > 1, scale b): tail (b/t)^a for t >= b, closed forms
  /// throughout; the transform is evaluated by damped quadrature.
  static HeavyComponent pareto(double shape, double scale) {
    if (!(shape > 1) || !(scale > 0))
      throw Error("pareto: need shape > 1 and scale > 0");
    HeavyComponent h;
    h.kind_ = HeavyKind::pareto;
    h.mean_ = shape * scale / (shape - 1);
    h.tail_ = [shape, scale](double t) {
      return t <= scale ? 1.0 : std::pow(scale / t, shape);
    };
    const double mean = h.mean_;
    h.excess_ = [shape, scale, mean](double t) {
      // integral of the tail from t to infinity, divided by the mean
      if (t <= scale)
        return ((scale - t) + scale / (shape - 1)) / mean;
      return std::pow(scale / t, shape) * t / ((shape - 1) * mean) ;
    };
    auto tailfn = h.tail_;
    h.lst_ = [tailfn, mean](cplx s) -> cplx {
      if (std::abs(s) < 1e-12) return cplx(1.0) - s * mean;
      // E[e^{-sX}] = 1 - s Int_0^inf e^{-st} P(X > t) dt
      const double rate = std::max(s.real(), 1e-3);
      const cplx integral = integrate_damped(
          [&](double t) { return std::exp(-s * t) * tailfn(t); }, 0.0, rate, 1e-12);
      return cplx(1.0) - s * integral;
    };
    return h;
  }

  /// The square-root heavy-tailed law used in the numerical experiment:
  /// LST 1 - s/((kappa + sqrt s)(1 + sqrt s)), principal branch; mean 1/kappa.
  static HeavyComponent aw_sqrt(double kappa, double t_max = 50.0) {
    if (!(kappa > 0)) throw Error("aw_sqrt: kappa must be positive");
    HeavyComponent h;
    h.kind_ = HeavyKind::aw_sqrt;
    h.mean_ = 1.0 / kappa;
    h.lst_ = [kappa](cplx s) -> cplx {
      const cplx rt = std::sqrt(s);
      return cplx(1.0) - s / ((kappa + rt) * (1.0 + rt));
    };
    h.build_tail_caches(t_max);
    return h;
  }

  /// Tail table (t_i, H(t_i)) with nonincreasing values; the transform is
  /// produced by quadrature against the interpolated tail and the excess
  /// tail by integrating it.
  static HeavyComponent from_table(std::vector<double> ts, std::vector<double> tails) {
    if (ts.size() != tails.size() || ts.size() < 4)
      throw Error("from_table: need at least 4 samples");
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
      if (!(ts[i + 1] > ts[i]) || tails[i + 1] > tails[i] + 1e-12)
        throw Error("from_table: abscissae must increase and tails not increase");
    HeavyComponent h;
    h.kind_ = HeavyKind::table;
    // power-law continuation beyond the last point
    const std::size_t n = ts.size();
    double p = 2.0;
    if (tails[n - 1] > 0 && tails[n - 2] > 0)
      p = std::log(tails[n - 2] / tails[n - 1]) / std::log(ts[n - 1] / ts[n - 2]);
    p = std::max(p, 1.2);
    const double t_last = ts[n - 1], h_last = tails[n - 1];
    auto interp = std::make_shared<detail::Pchip>(ts, tails);
    const double t0 = ts[0], h0 = tails[0];
    h.tail_ = [interp, t_last, h_last, p, t0, h0](double t) {
      if (t <= 0) return 1.0;
      if (t < t0) return 1.0 + (h0 - 1.0) * std::sqrt(t / t0);
      if (t > t_last) return h_last * std::pow(t_last / t, p);
      return std::clamp((*interp)(t), 0.0, 1.0);
    };
    auto tailfn = h.tail_;
    // mean = integral of the tail
    double mean = integrate([&](double t) { return cplx(tailfn(t)); }, 0.0, t_last, 1e-10).real();
    mean += h_last * t_last / (p - 1.0);
    h.mean_ = mean;
    h.lst_ = [tailfn, mean](cplx s) -> cplx {
      if (std::abs(s) < 1e-12) return cplx(1.0) - s * mean;
      const double rate = std::max(s.real(), 1e-3);
      const cplx integral = integrate_damped(
          [&](double t) { return std::exp(-s * t) * tailfn(t); }, 0.0, rate, 1e-12);
      return cplx(1.0) - s * integral;
    };
    h.build_excess_cache(t_last * 10);
    return h;
  }

 private:
  void build_tail_caches(double t_max) {
    // L{H}(s) = (1 - lst(s))/s and L{H^e}(s) = (1 - (1-lst(s))/(mean s))/s,
    // inverted with both algorithms (cross-checked), cached on a log grid.
    const auto lstfn = lst_;
    const double mu = mean_;
    TransformFn tail_tf = [lstfn](cplx s) { return (cplx(1.0) - lstfn(s)) / s; };
    TransformFn excess_tf = [lstfn, mu](cplx s) {
      return (cplx(1.0) - (cplx(1.0) - lstfn(s)) / (mu * s)) / s;
    };
    const int n = 400;
    const double lo = 1e-4, hi = 10.0 * std::max(t_max, 1.0);
    std::vector<double> ts(n), th(n), te(n);
    for (int i = 0; i < n; ++i) {
      const double t = lo * std::pow(hi / lo, i / (n - 1.0));
      ts[i] = t;
      th[i] = std::clamp(invert_checked(tail_tf, t), 0.0, 1.0);
      te[i] = std::clamp(invert_checked(excess_tf, t), 0.0, 1.0);
    }
    tail_ = make_log_interp(ts, th);
    excess_ = make_log_interp(ts, te);
  }

  void build_excess_cache(double t_hi) {
    const auto tailfn = tail_;
    const double mu = mean_;
    const int n = 400;
    const double lo = 1e-4;
    std::vector<double> ts(n), te(n);
    // excess tail by integrating the tail outward from the far end
    for (int i = 0; i < n; ++i) ts[i] = lo * std::pow(t_hi / lo, i / (n - 1.0));
    std::vector<double> seg(n, 0.0);
    double beyond = integrate_damped([&](double u) { return cplx(tailfn(ts[n - 1] + u)); },
                                     0.0, 1.0 / t_hi, 1e-11).real();
    for (int i = n - 1; i >= 0; --i) {
      const double upper = (i == n - 1) ? 0.0
                                        : integrate([&](double u) { return cplx(tailfn(u)); },
                                                    ts[i], ts[i + 1], 1e-12).real();
      seg[i] = (i == n - 1) ? beyond : seg[i + 1] + upper;
      te[i] = std::clamp(seg[i] / mu, 0.0, 1.0);
    }
    excess_ = make_log_interp(ts, te);
  }

  static std::function<double(double)> make_log_interp(const std::vector<double>& ts,
                                                       const std::vector<double>& ys) {
    // PCHIP in (log t, log y); exact limit 1 at t = 0 via sqrt blending
    // below the first grid point. Zero tail values terminate the grid.
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (ys[i] <= 0) break;
      lx.push_back(std::log(ts[i]));
      ly.push_back(std::log(ys[i]));
    }
    auto interp = std::make_shared<detail::Pchip>(lx, ly);
    const double t0 = ts.front(), y0 = ys.front();
    const double t_end = std::exp(lx.back());
    return [interp, t0, y0, t_end](double t) {
      if (t <= 0) return 1.0;
      if (t < t0) return 1.0 + (y0 - 1.0) * std::sqrt(t / t0);
      if (t > t_end) return 0.0;
      return std::exp((*interp)(std::log(t)));
    };
  }

  HeavyKind kind_ = HeavyKind::aw_sqrt;
  double mean_ = 1.0;
  std::function<cplx(cplx)> lst_;
  std::function<double(double)> tail_;
  std::function<double(double)> excess_;
};

/// (1 - lst(s)) / (mean s) with the continuous extension 1 at s = 0.
template <typename Dist>
cplx excess_lst(const Dist& d, cplx s) {
  if (std::abs(s) < 1e-14) return cplx(1.0);
  return (cplx(1.0) - d.lst(s)) / (d.mean() * s);
}
inline cplx excess_lst_of(const RationalLST& d, cplx s) {
  if (std::abs(s) < 1e-14) return cplx(1.0);
  return (cplx(1.0) - d(s)) / (d.mean() * s);
}

/// Service time G = (1-eps) F_p + eps F_h.
struct MixtureService {
  double eps = 0.0;
  RationalLST ph;
  HeavyComponent heavy;

  MixtureService(double e, RationalLST p, HeavyComponent h)
      : eps(e), ph(std::move(p)), heavy(std::move(h)) {
    if (eps < 0 || eps >= 1) throw Error("MixtureService: eps must be in [0,1)");
  }

  double mean() const { return (1 - eps) * ph.mean() + eps * heavy.mean(); }
  cplx lst(cplx s) const { return (1 - eps) * ph(s) + eps * heavy.lst(s); }
};

}  // namespace mapg1
