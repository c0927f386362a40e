#include <doctest.h>

#include <cmath>

#include "mapg1/poly.hpp"

using namespace mapg1;

namespace {
// independent oracle: quadratic formula for monic s^2 + b s + c
std::pair<cplx, cplx> quadratic_roots(cplx b, cplx c) {
  const cplx d = std::sqrt(b * b - 4.0 * c);
  return {(-b + d) / 2.0, (-b - d) / 2.0};
}
}  // namespace

TEST_CASE("poly evaluation and arithmetic") {
  Poly p({cplx(-5), cplx(-7), cplx(1)});  // s^2 - 7s - 5
  CHECK(p.degree() == 2);
  CHECK(std::abs(p(cplx(2)) - cplx(4 - 14 - 5)) < 1e-14);

  Poly q = Poly::identity() * Poly::identity();  // s^2
  CHECK(q.degree() == 2);
  CHECK(std::abs((p - p)(cplx(3))) == 0.0);
  CHECK(p.derivative().degree() == 1);
  CHECK(std::abs(p.derivative()(cplx(1)) - cplx(2 - 7)) < 1e-14);
}

TEST_CASE("poly_roots: fixture determinant quadratic") {
  // roots of s^2 - 7s - 5 from the quadratic formula
  const auto [r1, r2] = quadratic_roots(cplx(-7), cplx(-5));
  Poly p({cplx(-5), cplx(-7), cplx(1)});
  auto roots = poly_roots(p);
  REQUIRE(roots.size() == 2);
  const double big = std::max(roots[0].value.real(), roots[1].value.real());
  const double small = std::min(roots[0].value.real(), roots[1].value.real());
  CHECK(big == doctest::Approx(r1.real()).epsilon(1e-10));
  CHECK(small == doctest::Approx(r2.real()).epsilon(1e-10));
  CHECK(big == doctest::Approx(7.653311931459).epsilon(1e-9));
  CHECK(small == doctest::Approx(-0.6533119314590).epsilon(1e-9));
}

TEST_CASE("poly_roots: s^2 + 1 and multiple root flagging") {
  auto roots = poly_roots(Poly({cplx(1), cplx(0), cplx(1)}));
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) {
    CHECK(std::abs(r.value.real()) < 1e-12);
    CHECK(std::abs(std::abs(r.value.imag()) - 1.0) < 1e-12);
    CHECK(r.multiplicity == 1);
  }

  // (s-2)^2
  auto dbl = poly_roots(Poly({cplx(4), cplx(-4), cplx(1)}));
  REQUIRE(dbl.size() == 1);
  CHECK(dbl[0].multiplicity == 2);
  CHECK(std::abs(dbl[0].value - cplx(2)) < 1e-6);
}

TEST_CASE("poly_roots: zero polynomial rejected") {
  CHECK_THROWS_AS(poly_roots(Poly()), ZeroPolynomial);
  CHECK_THROWS_AS(poly_roots(Poly({cplx(3)})), ZeroPolynomial);
}

TEST_CASE("random polynomials: residual and conjugate closure") {
  // deterministic pseudo-random real coefficients
  unsigned state = 12345;
  auto next = [&]() {
    state = state * 1664525u + 1013904223u;
    return (state >> 8) / double(1 << 24) * 4.0 - 2.0;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const int deg = 2 + trial % 9;
    std::vector<cplx> c(deg + 1);
    for (auto& x : c) x = cplx(next());
    if (std::abs(c.back()) < 0.1) c.back() += cplx(1.0);
    Poly p(c);
    const double scale = p.max_abs_coeff();
    for (const cplx& r : poly_roots_flat(p)) {
      CHECK(std::abs(p(r)) < scale * 1e-8 * std::pow(1.0 + std::abs(r), deg));
      // real coefficients: the conjugate must also be a root
      bool found = false;
      for (const cplx& r2 : poly_roots_flat(p))
        if (std::abs(r2 - std::conj(r)) < 1e-6 * (1.0 + std::abs(r))) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("deflation: synthetic division removes a root") {
  Poly p = Poly::from_roots({cplx(1), cplx(-2), cplx(0.5, 0.5)});
  Poly q = p.deflate(cplx(1));
  CHECK(q.degree() == 2);
  CHECK(std::abs(q(cplx(-2))) < 1e-12);
  CHECK(std::abs(q(cplx(0.5, 0.5))) < 1e-12);
}
