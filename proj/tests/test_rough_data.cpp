#include "kdvlri/rough_data.hpp"
#include "kdvlri/sobolev.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace kdv;
using namespace kdv::testing;

namespace {

RoughDataSpec base_spec(double s, Phase phase, int max_mode, std::uint64_t seed = 0) {
  RoughDataSpec spec;
  spec.s = s;
  spec.phase = phase;
  spec.max_mode = max_mode;
  spec.seed = seed;
  return spec;
}

// Direct evaluation of the coefficient series, written independently of
// generate(): sum over positive modes only, doubled by symmetry.
double series_norm(const RoughDataSpec& spec, double sigma, int max_mode) {
  double acc = 0.0;
  for (int k = 1; k <= max_mode; ++k) {
    double q2 = 1.0;
    if (spec.phase == Phase::alternating_cos) {
      const double q = std::cos(k * std::numbers::pi / 2.0);
      q2 = q * q;
    }
    const double amp = spec.amplitude * std::pow(k, -spec.decay_offset - spec.s);
    acc += 2.0 * q2 * std::pow(1.0 + static_cast<double>(k) * k, sigma) * amp * amp;
  }
  return std::sqrt(acc);
}

} // namespace

TEST_CASE("generate: direct coefficient values for s=0, unit phases") {
  const SpectralField f = generate(base_spec(0.0, Phase::unit, 2), kTwoPi);
  CHECK(std::abs(f.coeff(1) - cplx(0.1, 0.0)) < 1e-15);
  CHECK(std::abs(f.coeff(-1) - cplx(0.1, 0.0)) < 1e-15);
  const double expected = 0.1 * std::pow(2.0, -0.501);
  CHECK(std::abs(f.coeff(2) - cplx(expected, 0.0)) < 1e-15);
  CHECK(std::abs(f.coeff(-2) - cplx(expected, 0.0)) < 1e-15);
  CHECK(f.coeff(0) == cplx(0.0, 0.0));
  CHECK(f.is_real());
}

TEST_CASE("generate: alternating_cos kills odd modes and alternates even ones") {
  const SpectralField f = generate(base_spec(-0.25, Phase::alternating_cos, 8), kTwoPi);
  for (int k : {1, 3, 5, 7}) {
    CHECK(std::abs(f.coeff(k)) == 0.0);
    CHECK(std::abs(f.coeff(-k)) == 0.0);
  }
  CHECK(f.coeff(2).real() < 0.0);
  CHECK(f.coeff(4).real() > 0.0);
  CHECK(f.coeff(6).real() < 0.0);
}

TEST_CASE("generate: unit-circle phases and the exact decay law") {
  const RoughDataSpec spec = base_spec(-0.25, Phase::random_unit, 64, 42);
  const SpectralField f = generate(spec, kTwoPi);
  for (int k = 1; k <= 64; ++k) {
    const double decay = spec.amplitude * std::pow(k, -spec.decay_offset - spec.s);
    CHECK(std::abs(std::abs(f.coeff(k)) - decay) <= 1e-14 * decay);
    CHECK(std::abs(f.coeff(-k) - std::conj(f.coeff(k))) == 0.0);
  }
}

TEST_CASE("generate: determinism and seed sensitivity") {
  const RoughDataSpec spec = base_spec(0.0, Phase::random_unit, 32, 7);
  const SpectralField a = generate(spec, kTwoPi);
  const SpectralField b = generate(spec, kTwoPi);
  for (int k = -32; k <= 32; ++k) CHECK(a.coeff(k) == b.coeff(k));

  RoughDataSpec other = spec;
  other.seed = 8;
  CHECK(rel_l2_diff(a, generate(other, kTwoPi)) > 1e-3);
}

TEST_CASE("generate: mean-zero and realness for all phase choices") {
  for (Phase phase : {Phase::unit, Phase::alternating_cos, Phase::random_unit}) {
    const SpectralField f = generate(base_spec(-0.1, phase, 40, 3), kTwoPi);
    CHECK(f.coeff(0) == cplx(0.0, 0.0));
    CHECK(f.is_real());
    CHECK(f.conjugate_symmetry_defect() == 0.0);
  }
}

TEST_CASE("generate refuses s outside (-1/2, 0]") {
  CHECK_THROWS_AS(generate(base_spec(-0.5, Phase::unit, 4), 1.0), std::domain_error);
  CHECK_THROWS_AS(generate(base_spec(0.1, Phase::unit, 4), 1.0), std::domain_error);
  CHECK_NOTHROW(generate(base_spec(0.0, Phase::unit, 4), 1.0));
}

TEST_CASE("h_norm matches the independently summed series") {
  const RoughDataSpec spec = base_spec(-0.25, Phase::alternating_cos, 200);
  const SpectralField f = generate(spec, kTwoPi);
  for (double sigma : {-0.5, -0.25, 0.0})
    CHECK(h_norm(f, sigma) == doctest::Approx(series_norm(spec, sigma, 200)).epsilon(1e-12));
}

TEST_CASE("regularity boundary: divergent above s, Cauchy below") {
  // Doubling max_mode: the partial sums converge for sigma = s - 1/4 and
  // grow without bound for sigma = s + 1/4.
  for (double s : {0.0, -0.25}) {
    const double below = s - 0.25;
    const double above = s + 0.25;
    double prev_below = 0.0, prev_above = 0.0;
    double ratio_below = 0.0, ratio_above = 0.0;
    for (int m = 1 << 8; m <= 1 << 12; m *= 2) {
      const SpectralField f = generate(base_spec(s, Phase::unit, m), kTwoPi);
      const double nb = h_norm(f, below);
      const double na = h_norm(f, above);
      if (prev_below > 0.0) {
        ratio_below = nb / prev_below;
        ratio_above = na / prev_above;
      }
      prev_below = nb;
      prev_above = na;
    }
    // Convergent side: the remaining tail shrinks like M^{-1/2}, so the
    // doubling ratio sits at 1 + O(M^{-1/2}) by M = 2^12.
    CHECK(ratio_below < 1.01);
    CHECK(ratio_above > 1.15);
    // Growth exponent of the divergent tail is sigma - s - 0.001 + 1/2 = 0.249.
    CHECK(std::log2(ratio_above) == doctest::Approx(0.249).epsilon(0.05));
  }
}

TEST_CASE("membership_profile") {
  SUBCASE("zero field gives zero norms") {
    const SpectralField z = SpectralField::zero(1.0, 8);
    for (const auto& [s, n] : membership_profile(z, {-0.5, 0.0, 0.5})) CHECK(n == 0.0);
  }
  SUBCASE("single mode k=1") {
    std::vector<cplx> coeffs(3);
    coeffs[1 + 1] = cplx(1.0, 0.0);
    const SpectralField f(1.0, 1, coeffs, false);
    for (const auto& [s, n] : membership_profile(f, {-0.5, -0.25, 0.0, 1.0}))
      CHECK(n == doctest::Approx(std::pow(2.0, s / 2.0)).epsilon(1e-14));
  }
  SUBCASE("straddles the membership boundary of rough data") {
    const double s = -0.25;
    std::vector<double> finite_side, divergent_side;
    for (int m : {1 << 9, 1 << 11}) {
      const SpectralField f = generate(base_spec(s, Phase::unit, m), kTwoPi);
      const auto prof = membership_profile(f, {s - 0.25, s + 0.25});
      finite_side.push_back(prof[0].second);
      divergent_side.push_back(prof[1].second);
    }
    CHECK(finite_side[1] / finite_side[0] < 1.05);
    CHECK(divergent_side[1] / divergent_side[0] > 1.2);
  }
}

TEST_CASE("spec JSON round-trip") {
  RoughDataSpec spec = base_spec(-0.25, Phase::random_unit, 512, 123456789ULL);
  spec.amplitude = 0.2;
  spec.decay_offset = 0.6;
  const RoughDataSpec back = RoughDataSpec::from_json(spec.to_json());
  CHECK(back.s == spec.s);
  CHECK(back.amplitude == spec.amplitude);
  CHECK(back.decay_offset == spec.decay_offset);
  CHECK(back.phase == spec.phase);
  CHECK(back.seed == spec.seed);
  CHECK(back.max_mode == spec.max_mode);
  CHECK(back.to_json() == spec.to_json());
  const SpectralField a = generate(spec, kTwoPi);
  const SpectralField b = generate(back, kTwoPi);
  for (int k = -spec.max_mode; k <= spec.max_mode; ++k) CHECK(a.coeff(k) == b.coeff(k));
}
