#include "kdvlri/selfcheck.hpp"

#include "kdvlri/csv_io.hpp"
#include "kdvlri/integrator.hpp"
#include "kdvlri/rough_data.hpp"
#include "kdvlri/sobolev.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

namespace kdv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double draw(std::uint64_t seed, std::uint64_t n) {
  return 2.0 * (static_cast<double>(mix64(seed * 0x9e3779b97f4a7c15ULL + n) >> 11) * 0x1.0p-53) -
         1.0;
}

SpectralField random_real_field(double period, int max_mode, std::uint64_t seed, double decay) {
  std::vector<cplx> coeffs(static_cast<std::size_t>(2 * max_mode + 1));
  for (int k = 1; k <= max_mode; ++k) {
    const double amp = 1.0 / std::pow(1.0 + k, decay);
    const cplx c(amp * draw(seed, static_cast<std::uint64_t>(2 * k)),
                 amp * draw(seed, static_cast<std::uint64_t>(2 * k + 1)));
    coeffs[static_cast<std::size_t>(k + max_mode)] = c;
    coeffs[static_cast<std::size_t>(-k + max_mode)] = std::conj(c);
  }
  return SpectralField(period, max_mode, std::move(coeffs), true);
}

double rel_diff(const SpectralField& a, const SpectralField& b) {
  const double denom = std::max(a.l2_norm(), b.l2_norm());
  const double diff = subtract(a, b).l2_norm();
  return denom == 0.0 ? diff : diff / denom;
}

PropertyResult resonance_identity() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SpectralField u = random_real_field(kTwoPi, 32, 900 + seed, 0.5);
    const int n = 1 + static_cast<int>(mix64(seed) % 32);
    for (double tau : {1e-1, 1e-3, 1e-6})
      worst = std::max(worst, rel_diff(lri_step(u, tau, n), lri_step_oracle(u, tau, n)));
  }
  return {"resonance_identity", worst <= 1e-12,
          "max relative step deviation " + format_double(worst) + " (tol 1e-12)"};
}

PropertyResult semigroup_isometry() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SpectralField u = random_real_field(kTwoPi, 64, 40 + seed, 0.8);
    for (double s : {-0.5, 0.0, 1.0}) {
      const double before = h_norm(u, s);
      const double after = h_norm(semigroup(u, 0.7 + static_cast<double>(seed)), s);
      worst = std::max(worst, std::abs(after - before) / before);
    }
  }
  return {"semigroup_isometry", worst <= 1e-12,
          "max relative H^s norm drift " + format_double(worst) + " (tol 1e-12)"};
}

PropertyResult projection_commutes() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SpectralField u = random_real_field(kTwoPi, 48, 70 + seed, 0.8);
    const SpectralField a = project(semigroup(u, 0.31), 17);
    const SpectralField b = semigroup(project(u, 17), 0.31);
    worst = std::max(worst, rel_diff(a, b));
  }
  return {"projection_semigroup_commute", worst <= 1e-13,
          "max relative deviation " + format_double(worst) + " (tol 1e-13)"};
}

PropertyResult mean_conservation() {
  RoughDataSpec spec;
  spec.s = 0.0;
  spec.phase = Phase::random_unit;
  spec.seed = 5;
  spec.max_mode = 64;
  SpectralField u = generate(spec, kTwoPi);
  const cplx m0 = mean(u);
  double worst = 0.0;
  for (int n = 0; n < 500; ++n) {
    u = lri_step(u, 1e-3, 16);
    worst = std::max(worst, std::abs(mean(u) - m0));
  }
  return {"mean_conservation", worst <= 1e-15,
          "max absolute mode-0 drift over 500 steps " + format_double(worst) + " (tol 1e-15)"};
}

PropertyResult realness_preservation() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SpectralField u = random_real_field(kTwoPi, 32, 110 + seed, 0.7);
    const double scale = 1.0 + u.l2_norm();
    for (int n = 0; n < 20; ++n) u = lri_step(u, 5e-3, 16);
    bool real_kept = u.is_real();
    for (const SpectralField& v :
         {project(u, 8), semigroup(u, 0.4), derivative(u), antiderivative(u), translate(u, 0.3),
          multiply(u, u)}) {
      real_kept = real_kept && v.is_real();
      worst = std::max(worst, v.conjugate_symmetry_defect() / (scale + v.l2_norm()));
    }
    if (!real_kept) return {"realness_preservation", false, "real flag dropped"};
  }
  return {"realness_preservation", worst <= 1e-12,
          "max relative conjugate-symmetry defect " + format_double(worst) + " (tol 1e-12)"};
}

PropertyResult convolution_agreement() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SpectralField f = random_real_field(1.0, 48, 130 + seed, 0.3);
    const SpectralField g = random_real_field(1.0, 31, 160 + seed, 0.3);
    worst = std::max(worst, rel_diff(multiply(f, g), multiply_direct(f, g)));
  }
  return {"convolution_agreement", worst <= 1e-13,
          "max relative deviation of the two product routes " + format_double(worst) +
              " (tol 1e-13)"};
}

PropertyResult rescaling_inequality() {
  int violations = 0;
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SpectralField phi = random_real_field(1.0, 48, 200 + seed, 0.6);
    for (int lam : {1, 2, 4, 8}) {
      const LambdaField phi_lam = rescale(phi, lam);
      for (double s : {-0.5, -0.25, 0.0}) {
        const double mid = h_norm_lambda(phi_lam, s);
        const double base = h_norm(phi, s);
        if (mid < std::pow(lam, -1.5) * base * (1.0 - 1e-12)) ++violations;
        if (mid > std::pow(lam, -1.5 - s) * base * (1.0 + 1e-12)) ++violations;
        ++checked;
      }
    }
  }
  return {"rescaling_inequality", violations == 0,
          std::to_string(violations) + " violations in " + std::to_string(checked) +
              " checks (slack 1e-12)"};
}

PropertyResult zero_mean_reduction() {
  std::vector<cplx> coeffs(9);
  coeffs[4] = cplx(3.0, 0.0);
  const SpectralField phi(kTwoPi, 4, coeffs, true);
  const auto [m, tilde] = zero_mean_split(phi);
  SpectralField u = tilde;
  double worst = 0.0;
  for (int n = 1; n <= 20; ++n) {
    u = lri_step(u, 1e-2, 4);
    const SpectralField r = recompose(u, m, 1e-2 * n);
    worst = std::max(worst, subtract(r, phi).l2_norm());
  }
  return {"zero_mean_reduction", worst <= 1e-14,
          "constant datum deviation " + format_double(worst) + " (tol 1e-14)"};
}

} // namespace

std::vector<PropertyResult> run_selfcheck() {
  return {resonance_identity(), semigroup_isometry(),  projection_commutes(),
          mean_conservation(),  realness_preservation(), convolution_agreement(),
          rescaling_inequality(), zero_mean_reduction()};
}

} // namespace kdv
