#include <doctest.h>

#include "mapg1/base_solver.hpp"
#include "mapg1/map_model.hpp"

using namespace mapg1;

namespace {
MapModel fixture_e2() {
  Vec rates(2);
  rates << 5, 5;
  Mat P(2, 2);
  P << 0, 1, 1, 0;
  Vec q(2);
  q << 0, 1;
  return MapModel(rates, P, q);
}
}  // namespace

TEST_CASE("stationary distribution") {
  Mat P(2, 2);
  P << 0, 1, 1, 0;
  Vec pi = stationary_dist(P);
  CHECK(pi(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(pi(1) == doctest::Approx(0.5).epsilon(1e-12));

  Mat one(1, 1);
  one << 1;
  CHECK(stationary_dist(one)(0) == doctest::Approx(1.0));

  // balance equations solved by hand: pi = (1/3, 2/3)
  Mat P2(2, 2);
  P2 << 0.5, 0.5, 0.25, 0.75;
  pi = stationary_dist(P2);
  CHECK(pi(0) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(pi(1) == doctest::Approx(2.0 / 3).epsilon(1e-12));
}

TEST_CASE("model validation rejects bad input") {
  Mat P(2, 2);
  P << 0.5, 0.5, 0.5, 0.5;
  Vec r(2), q(2);
  r << 1, 1;
  q << 0.5, 2.0;  // q outside [0,1]
  CHECK_THROWS_AS(MapModel(r, P, q), ConfigInvalid);

  Mat bad_rows(2, 2);
  bad_rows << 0.7, 0.7, 0.5, 0.5;
  q << 0.5, 0.5;
  CHECK_THROWS_AS(MapModel(r, bad_rows, q), ConfigInvalid);

  Mat reducible(2, 2);
  reducible << 1, 0, 0, 1;
  CHECK_THROWS_AS(MapModel(r, reducible, q), Reducible);
}

TEST_CASE("load and margin: E2 fixture") {
  MapModel m = fixture_e2();
  CHECK(m.pi()(0) == doctest::Approx(0.5));  // Erlang-2 embedded chain is uniform

  auto base = load_and_margin(m, 1.0 / 3.0);
  CHECK(base.lambda_eff == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(base.load == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(base.margin == doctest::Approx(1.0 / 30.0).epsilon(1e-10));

  auto mix = load_and_margin(m, 0.335);
  CHECK(mix.load == doctest::Approx(0.8375).epsilon(1e-12));
  CHECK(mix.stable());

  // margin = (pi Lambda^{-1} e)(1 - load)
  CHECK(mix.margin ==
        doctest::Approx(m.mean_sojourn() * (1 - mix.load)).epsilon(1e-12));

  // M/M/1-style single state
  Vec r1(1), q1(1);
  r1 << 1;
  q1 << 1;
  Mat p1(1, 1);
  p1 << 1;
  auto rep = load_and_margin(MapModel(r1, p1, q1), 0.5);
  CHECK(rep.load == doctest::Approx(0.5));
  CHECK(rep.margin == doctest::Approx(0.5));
}

TEST_CASE("characteristic matrix: E2 fixture entries") {
  MapModel m = fixture_e2();
  CharMatrix cm = char_matrix(m, RationalLST::exponential(3.0));
  for (cplx s : {cplx(1.0), cplx(0.4, 0.9)}) {
    CHECK(std::abs(cm.entries(0, 0)(s) - (s - 5.0)) < 1e-12);
    CHECK(std::abs(cm.entries(0, 1)(s) - 5.0) < 1e-12);
    CHECK(std::abs(cm.entries(1, 0)(s) - 15.0 / (3.0 + s)) < 1e-12);
    CHECK(std::abs(cm.entries(1, 1)(s) - (s - 5.0)) < 1e-12);
  }
}

TEST_CASE("characteristic matrix: 1x1 and generator structure at s=0") {
  Vec r1(1), q1(1);
  r1 << 2.0;
  q1 << 1;
  Mat p1(1, 1);
  p1 << 1;
  MapModel m(r1, p1, q1);
  CharMatrix cm = char_matrix(m, RationalLST::exponential(3.0));
  // [nu lambda/(nu+s) + s - lambda]
  for (cplx s : {cplx(0.5), cplx(2.0, 1.0)})
    CHECK(std::abs(cm.entries(0, 0)(s) - (3.0 * 2.0 / (3.0 + s) + s - 2.0)) < 1e-12);

  // at s = 0: M(0) Lambda^{-1} e = 0 (generator-like after column scaling);
  // with constant rates this is the literal row-sum statement.
  MapModel e2 = fixture_e2();
  CharMatrix cm2 = char_matrix(e2, RationalLST::exponential(3.0));
  CMat M0 = evaluate_point(cm2.entries, cplx(0));
  CVec li(2);
  li << 1.0 / 5.0, 1.0 / 5.0;
  CHECK((M0 * li).norm() < 1e-12);
  CHECK(std::abs(M0.row(0).sum()) < 1e-12);  // constant rates: rows sum to 0
  // det(M(0)) = 0 always
  CHECK(std::abs(rational_det(cm2.entries)(cplx(1e-12))) < 1e-9);
}
