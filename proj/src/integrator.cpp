#include "kdvlri/integrator.hpp"

#include "kdvlri/fft_backend.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace kdv {

namespace {

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(x) / x;
}

// (e^{alpha*tau}-1)/alpha for purely imaginary alpha = i*a, evaluated without
// cancellation: tau * e^{i*a*tau/2} * sinc(a*tau/2).
cplx phi_of_alpha(double a, double tau) {
  const double half = 0.5 * a * tau;
  return tau * sinc(half) * std::polar(1.0, half);
}

void require_zero_mean(const SpectralField& u, const char* who) {
  if (!has_zero_mean(u))
    throw std::domain_error(std::string(who) +
                            ": state has nonzero mean; reduce with zero_mean_split first");
}

} // namespace

void SchemeConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("SchemeConfig: tau must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("SchemeConfig: horizon must be positive");
  const double ratio = horizon / tau;
  if (std::abs(ratio - std::round(ratio)) > 1e-9)
    throw std::invalid_argument("SchemeConfig: horizon/tau = " + std::to_string(ratio) +
                                " is not an integer step count");
  if (filter_n < 1) throw std::invalid_argument("SchemeConfig: filter_n must be >= 1");
  if (linear_cutoff < filter_n)
    throw std::invalid_argument("SchemeConfig: linear_cutoff must be >= filter_n");
  if (mode_cap < linear_cutoff)
    throw std::invalid_argument("SchemeConfig: mode_cap must be >= linear_cutoff");
  if (!(c_l >= 1.0)) throw std::invalid_argument("SchemeConfig: c_l must be >= 1");
}

long SchemeConfig::step_count() const {
  return std::lround(horizon / tau);
}

SchemeConfig SchemeConfig::coupled(double tau, double horizon, double s, double epsilon,
                                   double prefactor, bool power_of_two, double c_l, int mode_cap) {
  SchemeConfig cfg;
  cfg.tau = tau;
  cfg.horizon = horizon;
  cfg.c_l = c_l;
  cfg.filter_n = choose_filter(tau, s, epsilon, prefactor, power_of_two);
  cfg.linear_cutoff = static_cast<int>(std::lround(c_l * cfg.filter_n));
  if (mode_cap == 0) {
    cfg.mode_cap = std::max(cfg.linear_cutoff, 2 * cfg.filter_n);
  } else {
    cfg.mode_cap = mode_cap;
    cfg.filter_n = std::min(cfg.filter_n, mode_cap);
    cfg.linear_cutoff = std::min(std::max(cfg.linear_cutoff, cfg.filter_n), mode_cap);
  }
  cfg.validate();
  return cfg;
}

int choose_filter(double tau, double s, double epsilon, double prefactor, bool power_of_two) {
  if (!(s > -0.5) || !(s <= 0.0))
    throw std::domain_error("choose_filter: s must lie in (-1/2, 0]");
  if (!(tau > 0.0) || !(tau <= 1.0))
    throw std::domain_error("choose_filter: tau must lie in (0, 1]");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("choose_filter: epsilon must be >= 0");
  if (!(prefactor > 0.0)) throw std::invalid_argument("choose_filter: prefactor must be positive");
  const double exponent = -1.0 / (2.0 - 2.0 * s) + epsilon;
  const double x = prefactor * std::pow(tau, exponent);
  if (!(x < 1e9)) throw std::invalid_argument("choose_filter: filter width overflows");
  long long n;
  if (power_of_two) {
    if (x <= 1.0) {
      n = 1;
    } else {
      const double lower = std::exp2(std::floor(std::log2(x)));
      n = static_cast<long long>((x - lower <= 2.0 * lower - x) ? lower : 2.0 * lower);
    }
  } else {
    n = std::llround(x);
  }
  return static_cast<int>(std::max<long long>(n, 1));
}

LriStepper::LriStepper(double period, int state_max_mode, double dt, int filter_n, int linear_cutoff)
    : period_(period), mode_cap_(state_max_mode), dt_(dt), filter_n_(filter_n),
      linear_cutoff_(linear_cutoff) {
  if (!(period_ > 0.0)) throw std::invalid_argument("LriStepper: period must be positive");
  if (mode_cap_ < 0) throw std::invalid_argument("LriStepper: negative resolution");
  if (filter_n_ < 0) throw std::invalid_argument("LriStepper: negative filter");
  if (!std::isfinite(dt_)) throw std::invalid_argument("LriStepper: non-finite time step");
  lin_.resize(static_cast<std::size_t>(2 * mode_cap_ + 1));
  for (int k = -mode_cap_; k <= mode_cap_; ++k) {
    const double kap = 2.0 * std::numbers::pi * static_cast<double>(k) / period_;
    lin_[static_cast<std::size_t>(k + mode_cap_)] = std::polar(1.0, dt_ * kap * kap * kap);
  }
}

std::vector<cplx> LriStepper::square_keep(const std::vector<cplx>& coeffs, int band,
                                          int keep) const {
  int n = 1;
  while (n < 2 * band + keep + 1) n *= 2;
  bins_.assign(static_cast<std::size_t>(n), cplx(0.0, 0.0));
  vals_.resize(static_cast<std::size_t>(n));
  for (int k = -band; k <= band; ++k)
    bins_[static_cast<std::size_t>(((k % n) + n) % n)] = coeffs[static_cast<std::size_t>(k + band)];
  fft::transform(bins_.data(), vals_.data(), n, /*forward=*/false);
  for (auto& v : vals_) v *= v;
  fft::transform(vals_.data(), bins_.data(), n, /*forward=*/true);
  std::vector<cplx> out(static_cast<std::size_t>(2 * keep + 1));
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int k = -keep; k <= keep; ++k)
    out[static_cast<std::size_t>(k + keep)] =
        bins_[static_cast<std::size_t>(((k % n) + n) % n)] * inv_n;
  return out;
}

SpectralField LriStepper::step(const SpectralField& u) const {
  if (u.period() != period_ || u.max_mode() != mode_cap_)
    throw std::invalid_argument("LriStepper: state does not match the prepared layout");
  require_zero_mean(u, "lri_step");

  const int b = std::min(mode_cap_, filter_n_);
  const int m_nl = std::min(2 * b, filter_n_);
  const int m_out = std::max(mode_cap_, m_nl);

  // w = d^{-1} P_N u, and its free flight A = e^{-dt d^3} w.
  std::vector<cplx> wc(static_cast<std::size_t>(2 * b + 1));
  std::vector<cplx> ac(static_cast<std::size_t>(2 * b + 1));
  for (int k = -b; k <= b; ++k) {
    if (k == 0) continue;
    const double kap = 2.0 * std::numbers::pi * static_cast<double>(k) / period_;
    const cplx w = u.coeff(k) / cplx(0.0, kap);
    wc[static_cast<std::size_t>(k + b)] = w;
    ac[static_cast<std::size_t>(k + b)] = w * lin_[static_cast<std::size_t>(k + mode_cap_)];
  }
  const std::vector<cplx> p1 = square_keep(ac, b, m_nl);
  const std::vector<cplx> p2 = square_keep(wc, b, m_nl);

  std::vector<cplx> out(static_cast<std::size_t>(2 * m_out + 1));
  for (int k = -mode_cap_; k <= mode_cap_; ++k) {
    if (linear_cutoff_ >= 0 && std::abs(k) > linear_cutoff_) continue;
    out[static_cast<std::size_t>(k + m_out)] =
        u.coeff(k) * lin_[static_cast<std::size_t>(k + mode_cap_)];
  }
  // Nonlinear part (1/6)[P_N A^2 - P_N e^{-dt d^3} w^2]. Mode zero cancels
  // identically under the (k,-k) pairing, so it is skipped and the step
  // conserves the mean exactly.
  for (int k = -m_nl; k <= m_nl; ++k) {
    if (k == 0) continue;
    const cplx twisted =
        p2[static_cast<std::size_t>(k + m_nl)] * lin_[static_cast<std::size_t>(k + mode_cap_)];
    out[static_cast<std::size_t>(k + m_out)] +=
        (p1[static_cast<std::size_t>(k + m_nl)] - twisted) / 6.0;
  }
  return SpectralField(SpectralField::unchecked_t{}, period_, m_out, std::move(out), u.is_real());
}

SpectralField lri_step(const SpectralField& u, double tau, int filter_n) {
  return LriStepper(u.period(), u.max_mode(), tau, filter_n).step(u);
}

SpectralField dense_output(const SpectralField& u, double dt, double tau_step, int filter_n) {
  if (dt < 0.0 || dt > tau_step)
    throw std::domain_error("dense_output: dt must lie in [0, tau] of the enclosing step");
  return LriStepper(u.period(), u.max_mode(), dt, filter_n).step(u);
}

SpectralField fully_discrete_step(const SpectralField& u, const SchemeConfig& cfg) {
  cfg.validate();
  return LriStepper(u.period(), u.max_mode(), cfg.tau, cfg.filter_n, cfg.linear_cutoff).step(u);
}

SpectralField lri_step_oracle(const SpectralField& u, double tau, int filter_n) {
  if (filter_n < 0) throw std::invalid_argument("lri_step_oracle: negative filter");
  require_zero_mean(u, "lri_step_oracle");

  const int m = u.max_mode();
  const int b = std::min(m, filter_n);
  const int m_nl = std::min(2 * b, filter_n);
  const int m_out = std::max(m, m_nl);

  SpectralField lin = extend(semigroup(u, tau), m_out);
  std::vector<cplx> out(lin.coeffs());

  for (int k = -m_nl; k <= m_nl; ++k) {
    if (k == 0) continue;
    const double kap = u.wavenumber(k);
    cplx acc(0.0, 0.0);
    const int lo = std::max(-b, k - b);
    const int hi = std::min(b, k + b);
    for (int k1 = lo; k1 <= hi; ++k1) {
      const int k2 = k - k1;
      if (k1 == 0 || k2 == 0) continue;
      const double kap1 = u.wavenumber(k1);
      const double kap2 = u.wavenumber(k2);
      // alpha = (i kap)^3 - (i kap1)^3 - (i kap2)^3 = i * a, computed from
      // the literal cubes; the resonance identity is left to the closed form.
      const double a = (kap1 * kap1 * kap1 + kap2 * kap2 * kap2) - kap * kap * kap;
      acc += u.coeff(k1) * u.coeff(k2) * phi_of_alpha(a, tau);
    }
    out[static_cast<std::size_t>(k + m_out)] +=
        0.5 * cplx(0.0, kap) * std::polar(1.0, tau * kap * kap * kap) * acc;
  }
  return SpectralField(SpectralField::unchecked_t{}, u.period(), m_out, std::move(out),
                       u.is_real());
}

std::pair<double, SpectralField> zero_mean_split(const SpectralField& phi) {
  if (!phi.is_real())
    throw std::invalid_argument("zero_mean_split: expects a real-flagged field");
  const double m = phi.coeff(0).real();
  std::vector<cplx> coeffs(phi.coeffs());
  coeffs[static_cast<std::size_t>(phi.max_mode())] = cplx(0.0, 0.0);
  return {m, SpectralField(SpectralField::unchecked_t{}, phi.period(), phi.max_mode(),
                           std::move(coeffs), true)};
}

SpectralField recompose(const SpectralField& u_tilde, double m, double t) {
  SpectralField shifted = translate(u_tilde, -t * m);
  std::vector<cplx> coeffs(shifted.coeffs());
  coeffs[static_cast<std::size_t>(shifted.max_mode())] += m;
  return SpectralField(SpectralField::unchecked_t{}, shifted.period(), shifted.max_mode(),
                       std::move(coeffs), shifted.is_real());
}

Trajectory evolve(const SpectralField& phi, const SchemeConfig& cfg, Scheme scheme,
                  long snapshot_stride) {
  cfg.validate();
  if (snapshot_stride < 1) throw std::invalid_argument("evolve: snapshot_stride must be >= 1");
  require_zero_mean(phi, "evolve");

  SpectralField state = extend(project(phi, cfg.mode_cap), cfg.mode_cap);
  if (scheme == Scheme::fully_discrete)
    state = extend(project(state, cfg.linear_cutoff), cfg.mode_cap);

  const long steps = cfg.step_count();
  const double l2_initial = state.l2_norm();

  LriStepper stepper(phi.period(), cfg.mode_cap, cfg.tau, cfg.filter_n,
                     scheme == Scheme::fully_discrete ? cfg.linear_cutoff : -1);

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(state);
  for (long n = 1; n <= steps; ++n) {
    state = stepper.step(state);
    const double l2 = state.l2_norm();
    if (!std::isfinite(l2))
      throw BlowupError(n, "evolve: non-finite state at step " + std::to_string(n));
    if (l2_initial > 0.0 && l2 > 1e8 * l2_initial)
      throw BlowupError(n, "evolve: L2 norm exceeded 1e8x its initial value at step " +
                               std::to_string(n));
    if (n % snapshot_stride == 0 || n == steps) {
      traj.times.push_back(static_cast<double>(n) * cfg.tau);
      traj.states.push_back(state);
    }
  }
  return traj;
}

} // namespace kdv
