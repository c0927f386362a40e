#include <doctest.h>

#include "mapg1/inversion.hpp"
#include "mapg1/quadrature.hpp"

using namespace mapg1;

TEST_CASE("known transform pairs") {
  // 1/(s+1) <-> e^{-t}
  TransformFn f = [](cplx s) { return 1.0 / (s + 1.0); };
  CHECK(euler_invert(f, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
  CHECK(talbot_invert(f, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));

  // 1/s^2 <-> t
  TransformFn ramp = [](cplx s) { return 1.0 / (s * s); };
  CHECK(euler_invert(ramp, 2.0) == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(talbot_invert(ramp, 2.0) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("euler and talbot agree on the aw_sqrt tail transform") {
  const double kappa = 2.0;
  TransformFn f = [kappa](cplx s) {
    const cplx rt = std::sqrt(s);
    const cplx lst = 1.0 - s / ((kappa + rt) * (1.0 + rt));
    return (1.0 - lst) / s;
  };
  for (double t : {0.3, 1.0, 5.0, 20.0}) {
    const double e = euler_invert(f, t);
    const double tb = talbot_invert(f, t, 48);
    CHECK(std::abs(e - tb) < 1e-6);
  }
  CHECK_NOTHROW(invert_checked(f, 1.0));
}

TEST_CASE("invert dispatches on settings") {
  TransformFn f = [](cplx s) { return 1.0 / (s + 0.5); };
  const double expect = std::exp(-0.5 * 3.0);
  CHECK(invert(f, 3.0, InversionSettings::euler()) == doctest::Approx(expect).epsilon(1e-8));
  CHECK(invert(f, 3.0, InversionSettings::talbot()) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("quadrature: adaptive GK on smooth and kinked integrands") {
  const cplx v = integrate([](double x) { return cplx(std::exp(-x)); }, 0.0, 10.0, 1e-12);
  CHECK(std::abs(v.real() - (1.0 - std::exp(-10.0))) < 1e-11);
  const cplx w = integrate([](double x) { return cplx(std::sqrt(x)); }, 0.0, 1.0, 1e-10);
  CHECK(std::abs(w.real() - 2.0 / 3.0) < 1e-9);
  const cplx d = integrate_damped([](double x) { return cplx(std::exp(-2 * x) * std::cos(x)); },
                                  0.0, 2.0, 1e-12);
  CHECK(std::abs(d.real() - 2.0 / 5.0) < 1e-10);
}
