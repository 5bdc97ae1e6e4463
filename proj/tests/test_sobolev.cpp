#include "kdvlri/sobolev.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace kdv;
using namespace kdv::testing;

TEST_CASE("h_norm: single modes and Plancherel") {
  SUBCASE("single mode k=3") {
    std::vector<cplx> coeffs(7);
    coeffs[3 + 3] = cplx(1.0, 0.0);
    const SpectralField f(1.0, 3, coeffs, false);
    for (double s : {-0.5, -0.25, 0.0, 1.0, 2.0})
      CHECK(h_norm(f, s) == doctest::Approx(std::pow(10.0, s / 2.0)).epsilon(1e-14));
  }
  SUBCASE("s=0 equals the l2 coefficient norm") {
    for (std::uint64_t seed : {4u, 5u, 6u}) {
      const SpectralField f = random_complex_field(kTwoPi, 31, seed);
      CHECK(h_norm(f, 0.0) == doctest::Approx(f.l2_norm()).epsilon(1e-14));
    }
  }
  SUBCASE("monotone in s") {
    const SpectralField f = random_real_field(1.0, 24, 7);
    double prev = h_norm(f, -0.5);
    for (double s : {-0.25, 0.0, 0.5, 1.0}) {
      const double cur = h_norm(f, s);
      CHECK(cur >= prev * (1.0 - 1e-14));
      prev = cur;
    }
  }
  SUBCASE("homogeneity") {
    const SpectralField f = random_real_field(1.0, 16, 8);
    CHECK(h_norm(scale(f, -2.5), -0.5) == doctest::Approx(2.5 * h_norm(f, -0.5)).epsilon(1e-13));
  }
}

TEST_CASE("h_error") {
  const SpectralField u = random_real_field(kTwoPi, 20, 9);
  SUBCASE("identical fields have zero error") { CHECK(h_error(u, u, -0.5) == 0.0); }
  SUBCASE("single-mode difference at k=2, s=-1/2") {
    std::vector<cplx> coeffs(5);
    coeffs[2 + 2] = cplx(1.0, 0.0);
    const SpectralField d(kTwoPi, 2, coeffs, false);
    const SpectralField v = add(u, d);
    CHECK(h_error(v, u, -0.5) == doctest::Approx(std::pow(5.0, -0.25)).epsilon(1e-14));
    CHECK(h_error(v, u, -0.5) == doctest::Approx(0.6687403).epsilon(1e-6));
  }
  SUBCASE("triangle inequality") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const SpectralField a = random_complex_field(1.0, 12, 3 * seed);
      const SpectralField b = random_complex_field(1.0, 12, 3 * seed + 1);
      const SpectralField c = random_complex_field(1.0, 12, 3 * seed + 2);
      for (double s : {-0.5, 0.0, 0.75})
        CHECK(h_error(a, c, s) <= h_error(a, b, s) + h_error(b, c, s) + 1e-14);
    }
  }
  SUBCASE("bands are aligned by zero-extension") {
    const SpectralField narrow = project(u, 4);
    const SpectralField wide = extend(narrow, 20);
    CHECK(h_error(narrow, wide, -0.5) == 0.0);
  }
  SUBCASE("period mismatch is refused") {
    const SpectralField v = random_real_field(1.0, 20, 9);
    CHECK_THROWS_AS(h_error(u, v, 0.0), std::invalid_argument);
  }
}

TEST_CASE("rescale: fractional frequency lattice") {
  SUBCASE("lam = 1 keeps coefficients") {
    const SpectralField f = random_real_field(1.0, 10, 11);
    const LambdaField g = rescale(f, 1);
    for (int k = -10; k <= 10; ++k) CHECK(g.coeff(k) == f.coeff(k));
  }
  SUBCASE("single mode halves under lam = 2") {
    std::vector<cplx> coeffs(3);
    coeffs[1 + 1] = cplx(1.0, 0.0);
    const SpectralField f(1.0, 1, coeffs, false);
    const LambdaField g = rescale(f, 2);
    CHECK(g.frequency(1) == doctest::Approx(0.5));
    CHECK(g.coeff(1) == cplx(0.5, 0.0));
  }
  SUBCASE("requires a unit period") {
    const SpectralField f = random_real_field(kTwoPi, 4, 2);
    CHECK_THROWS_AS(rescale(f, 2), std::invalid_argument);
  }
  SUBCASE("requires lam >= 1") {
    const SpectralField f = random_real_field(1.0, 4, 2);
    CHECK_THROWS_AS(rescale(f, 0), std::invalid_argument);
  }
}

TEST_CASE("h_norm_lambda") {
  SUBCASE("zero field") {
    const LambdaField z(3, 5, std::vector<cplx>(11));
    CHECK(h_norm_lambda(z, -0.5) == 0.0);
  }
  SUBCASE("single fractional mode k=1/2") {
    std::vector<cplx> coeffs(3);
    coeffs[1 + 1] = cplx(0.5, 0.0);
    const LambdaField f(2, 1, coeffs);
    CHECK(h_norm_lambda(f, 0.0) == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(h_norm_lambda(f, 0.0) == doctest::Approx(0.35355339).epsilon(1e-7));
  }
  SUBCASE("s=0 rescaling collapses to the lam^{-3/2} law") {
    const SpectralField f = random_real_field(1.0, 32, 13);
    for (int lam : {1, 2, 4, 8}) {
      const double lhs = h_norm_lambda(rescale(f, lam), 0.0);
      const double rhs = std::pow(lam, -1.5) * h_norm(f, 0.0);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
  }
}

TEST_CASE("two-sided rescaling inequality for s <= 0") {
  // lam^{-3/2} ||phi||_{H^s} <= ||phi_lam||_{H^s(0,lam)} <= lam^{-3/2-s} ||phi||_{H^s}.
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const SpectralField phi = random_real_field(1.0, 48, 1000 + seed);
    for (int lam : {1, 2, 4, 8}) {
      const LambdaField phi_lam = rescale(phi, lam);
      for (double s : {-0.5, -0.25, 0.0}) {
        const double mid = h_norm_lambda(phi_lam, s);
        const double base = h_norm(phi, s);
        const double lo = std::pow(lam, -1.5) * base;
        const double hi = std::pow(lam, -1.5 - s) * base;
        CHECK(mid >= lo * (1.0 - 1e-12));
        CHECK(mid <= hi * (1.0 + 1e-12));
        // Strict interior for s < 0 on a generic field and lam > 1.
        if (s < 0.0 && lam > 1) {
          CHECK(mid > lo * (1.0 + 1e-12));
          CHECK(mid < hi * (1.0 - 1e-12));
        }
        ++checked;
      }
    }
  }
  CHECK(checked == 25 * 4 * 3);
}

TEST_CASE("semigroup and translate are h_norm isometries") {
  const SpectralField f = random_real_field(1.0, 20, 17);
  for (double s : {-0.5, -0.25, 0.0, 1.0}) {
    const double base = h_norm(f, s);
    CHECK(std::abs(h_norm(semigroup(f, 0.83), s) - base) <= 1e-12 * base);
    CHECK(std::abs(h_norm(translate(f, 0.29), s) - base) <= 1e-12 * base);
  }
}
