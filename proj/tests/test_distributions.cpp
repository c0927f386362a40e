#include <doctest.h>

#include "mapg1/distributions.hpp"

using namespace mapg1;

namespace {
// test-only closed forms for the aw_sqrt(kappa=2) tails:
//   H(t)  = 2 erfcx(2 sqrt t) - erfcx(sqrt t)
//   He(t) = 2 erfcx(sqrt t)  - erfcx(2 sqrt t)
// erfcx(x) = e^{x^2} erfc(x); continued fraction for large x.
double erfcx(double x) {
  if (x < 12.0) return std::exp(x * x) * std::erfc(x);
  // Laplace continued fraction, sufficient depth for x >= 12
  double cf = 0.0;
  for (int k = 30; k >= 1; --k) cf = (k / 2.0) / (x + cf);
  return 1.0 / ((x + cf) * std::sqrt(M_PI));
}
double aw2_tail(double t) { return 2 * erfcx(2 * std::sqrt(t)) - erfcx(std::sqrt(t)); }
double aw2_excess(double t) { return 2 * erfcx(std::sqrt(t)) - erfcx(2 * std::sqrt(t)); }
}  // namespace

TEST_CASE("rational LSTs: exponential building blocks") {
  auto exp3 = RationalLST::exponential(3.0);
  CHECK(std::abs(exp3(cplx(0)) - 1.0) < 1e-14);
  CHECK(std::abs(exp3(cplx(3)) - 0.5) < 1e-14);
  CHECK(exp3.mean() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  auto erl = RationalLST::erlang(2, 4.0);
  CHECK(erl.mean() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(erl(cplx(4)) - 0.25) < 1e-14);

  auto hyper = RationalLST::hyperexponential({0.3, 0.7}, {1.0, 5.0});
  CHECK(hyper.mean() == doctest::Approx(0.3 / 1.0 + 0.7 / 5.0).epsilon(1e-12));
}

TEST_CASE("aw_sqrt: transform values and mean") {
  auto h = HeavyComponent::aw_sqrt(2.0, 10.0);
  CHECK(std::abs(h.lst(cplx(0)) - 1.0) < 1e-14);
  CHECK(std::abs(h.lst(cplx(1)) - 5.0 / 6.0) < 1e-14);  // 1 - 1/((2+1)(1+1))
  CHECK(h.mean() == doctest::Approx(0.5).epsilon(1e-12));
  // -lst'(0) = mean by central finite difference along the real axis
  const double fd = -((h.lst(cplx(1e-5)) - h.lst(cplx(0))).real() / 1e-5);
  CHECK(fd == doctest::Approx(h.mean()).epsilon(1e-2));
  CHECK_THROWS_AS(h.lst(cplx(-1.0)), BranchViolation);
}

TEST_CASE("aw_sqrt cached tails match the closed form") {
  auto h = HeavyComponent::aw_sqrt(2.0, 50.0);
  for (double t : {1e-3, 0.1, 1.0, 5.0, 20.0, 100.0}) {
    CHECK(h.tail(t) == doctest::Approx(aw2_tail(t)).epsilon(2e-5));
    CHECK(h.excess_tail(t) == doctest::Approx(aw2_excess(t)).epsilon(2e-5));
  }
  CHECK(h.tail(0) == 1.0);
  CHECK(h.excess_tail(0) == 1.0);
  // monotone nonincreasing on a sampled grid
  double prev = 1.0;
  for (double t = 0.01; t < 200; t *= 1.7) {
    const double v = h.tail(t);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
}

TEST_CASE("pareto tails, mean and excess") {
  auto p = HeavyComponent::pareto(3.0, 2.0);
  CHECK(p.mean() == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(p.tail(4.0) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(p.tail(0.0) == 1.0);
  // excess via quadrature of the tail: int_t^inf (2/u)^3 du / mean
  const double t0 = 5.0;
  const double quad = integrate([&](double u) { return cplx(p.tail(u)); }, t0, 4000.0,
                                1e-10).real() / p.mean();
  CHECK(p.excess_tail(t0) == doctest::Approx(quad).epsilon(1e-4));
  // lst consistency: lst(0)=1, -lst'(0) ~ mean
  CHECK(std::abs(p.lst(cplx(0)) - 1.0) < 1e-12);
  const cplx d = (p.lst(cplx(1e-4)) - p.lst(cplx(0.0))) / 1e-4;
  CHECK(-d.real() == doctest::Approx(3.0).epsilon(1e-2));
}

TEST_CASE("excess transform identity") {
  auto exp2 = RationalLST::exponential(2.0);
  // excess of exponential is the same exponential (memorylessness)
  for (cplx s : {cplx(0.5), cplx(1.0, 2.0), cplx(3.0, -1.0)}) {
    CHECK(std::abs(excess_lst_of(exp2, s) - 2.0 / (2.0 + s)) < 1e-12);
  }
  // identity excess*mean*s + lst = 1 at random points with Re > 0
  auto h = HeavyComponent::aw_sqrt(2.0, 10.0);
  unsigned state = 99;
  auto next = [&]() {
    state = state * 1664525u + 1013904223u;
    return (state >> 8) / double(1 << 24);
  };
  for (int k = 0; k < 20; ++k) {
    const cplx s(0.05 + 3.0 * next(), 4.0 * next() - 2.0);
    const cplx lhs = excess_lst(h, s) * h.mean() * s + h.lst(s);
    CHECK(std::abs(lhs - 1.0) < 1e-10);
  }
  CHECK(std::abs(excess_lst(h, cplx(0)) - 1.0) < 1e-14);
  CHECK(std::abs(excess_lst(h, cplx(1)) - 1.0 / 3.0) < 1e-12);  // (1-5/6)/(0.5*1)
}

TEST_CASE("mixture service") {
  MixtureService mix(0.01, RationalLST::exponential(3.0), HeavyComponent::aw_sqrt(2.0, 10.0));
  CHECK(mix.mean() == doctest::Approx(0.335).epsilon(1e-12));
  for (cplx s : {cplx(0.7), cplx(1.0, 1.0)}) {
    const cplx expect = 0.99 * 3.0 / (3.0 + s) + 0.01 * mix.heavy.lst(s);
    CHECK(std::abs(mix.lst(s) - expect) < 1e-13);
  }
  CHECK(std::abs(mix.lst(cplx(0)) - 1.0) < 1e-13);
  CHECK_THROWS_AS(MixtureService(1.0, RationalLST::exponential(1.0),
                                 HeavyComponent::pareto(2.0, 1.0)),
                  Error);
}

TEST_CASE("table-backed heavy component reproduces pareto") {
  auto ref = HeavyComponent::pareto(3.0, 2.0);
  std::vector<double> ts, tails;
  for (double t = 0.05; t < 400.0; t *= 1.08) {
    ts.push_back(t);
    tails.push_back(ref.tail(t));
  }
  auto tab = HeavyComponent::from_table(ts, tails);
  CHECK(tab.mean() == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(tab.tail(4.0) == doctest::Approx(0.125).epsilon(1e-3));
  CHECK(tab.excess_tail(5.0) == doctest::Approx(ref.excess_tail(5.0)).epsilon(1e-2));
  CHECK(std::abs(tab.lst(cplx(1.0)) - ref.lst(cplx(1.0))) < 1e-3);
}

TEST_CASE("matrix-exponential tail realness and MatrixExpDist shape") {
  MatrixExpDist d;
  d.atom0 = 1.0 / 6.0;
  d.terms.push_back({cplx(0.653311931459), cplx(5.0 / 6.0)});
  CHECK(d.tail(0.0) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(d.tail(5.0) == doctest::Approx(0.031781).epsilon(1e-4));
  // conjugate pair with conjugate weights stays real
  MatrixExpDist c;
  c.terms.push_back({cplx(1.0, 2.0), cplx(0.3, 0.4)});
  c.terms.push_back({cplx(1.0, -2.0), cplx(0.3, -0.4)});
  for (double t : {0.0, 0.5, 2.0}) CHECK_NOTHROW(c.tail(t));
}
