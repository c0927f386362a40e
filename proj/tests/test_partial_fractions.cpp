#include <doctest.h>

#include "mapg1/partial_fractions.hpp"

using namespace mapg1;

TEST_CASE("partial fractions: base workload transform of the E2 fixture") {
  // (1/6)(s + rho)/(s + y) with rho = 30/s2, y = s2 - 7 + y ... derived from
  // the determinant quadratic s^2 - 7s - 5 (quadratic formula oracle).
  const double s2 = (7.0 + std::sqrt(69.0)) / 2.0;
  const double y = (std::sqrt(69.0) - 7.0) / 2.0;
  const double rho = 30.0 / s2;
  RationalFn w(Poly({cplx(rho / 6.0), cplx(1.0 / 6.0)}), Poly({cplx(y), cplx(1)}));
  const PartialFractions pf = partial_fractions(w);
  CHECK(std::abs(pf.constant - 1.0 / 6.0) < 1e-12);
  REQUIRE(pf.terms.size() == 1);
  CHECK(pf.terms[0].pole.real() == doctest::Approx(-y).epsilon(1e-12));
  // cover-up residue: (1/6)(rho - y)
  CHECK(pf.terms[0].residue.real() == doctest::Approx((rho - y) / 6.0).epsilon(1e-12));
  CHECK(pf.terms[0].residue.real() == doctest::Approx(0.5444266095).epsilon(1e-8));
}

TEST_CASE("partial fractions: textbook cases") {
  const RationalFn s = RationalFn::identity();
  // 1/(s+1)
  RationalFn f(Poly({cplx(1)}), Poly({cplx(1), cplx(1)}));
  PartialFractions pf = partial_fractions(f);
  CHECK(std::abs(pf.constant) < 1e-14);
  REQUIRE(pf.terms.size() == 1);
  CHECK(std::abs(pf.terms[0].residue - 1.0) < 1e-12);
  CHECK(std::abs(pf.terms[0].pole + 1.0) < 1e-12);

  // (s+2)/((s+1)(s+3)): cover-up gives residues 1/2, 1/2
  RationalFn g(Poly({cplx(2), cplx(1)}), Poly::from_roots({cplx(-1), cplx(-3)}));
  pf = partial_fractions(g);
  REQUIRE(pf.terms.size() == 2);
  for (const auto& t : pf.terms) CHECK(std::abs(t.residue - 0.5) < 1e-12);
}

TEST_CASE("partial fractions: resummation reproduces the source") {
  RationalFn f(Poly({cplx(3), cplx(2), cplx(0.5)}),
               Poly::from_roots({cplx(-1), cplx(-2.5), cplx(-4, 1), cplx(-4, -1)}));
  const PartialFractions pf = partial_fractions(f);
  unsigned state = 2024;
  auto next = [&]() {
    state = state * 1664525u + 1013904223u;
    return (state >> 8) / double(1 << 24) * 5.0;
  };
  for (int k = 0; k < 10; ++k) {
    const cplx s(next(), next() - 2.5);
    CHECK(std::abs(pf(s) - f(s)) < 1e-9 * (1.0 + std::abs(f(s))));
  }
}

TEST_CASE("partial fractions: multiple pole rejected") {
  RationalFn f(Poly({cplx(1)}), Poly::from_roots({cplx(-2), cplx(-2)}));
  CHECK_THROWS_AS(partial_fractions(f), MultiplePole);
}

TEST_CASE("pole expansion handles double poles") {
  // 1/((s+1)^2 (s+3)) = 1/4 /(s+1)^2 - 1/4 /(s+1) ... cover-up for the
  // order-2 coefficient: 1/(s+3) at s=-1 is 1/2; d/ds 1/(s+3) at -1 is -1/4.
  RationalFn f(Poly({cplx(1)}), Poly::from_roots({cplx(-1), cplx(-1), cplx(-3)}));
  const PoleExpansion pe = pole_expansion(f);
  REQUIRE(pe.terms.size() == 2);
  for (const auto& t : pe.terms) {
    if (std::abs(t.pole + 1.0) < 1e-6) {
      REQUIRE(t.laurent.size() == 2);
      CHECK(std::abs(t.laurent[1] - 0.5) < 1e-9);    // (s+1)^{-2}
      CHECK(std::abs(t.laurent[0] + 0.25) < 1e-9);   // (s+1)^{-1}
    }
  }
  for (cplx s : {cplx(1.0, 0.5), cplx(0.2, -2.0), cplx(4.0)}) {
    CHECK(std::abs(pe(s) - f(s)) < 1e-9 * (1.0 + std::abs(f(s))));
  }
}
