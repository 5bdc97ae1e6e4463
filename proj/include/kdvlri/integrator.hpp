#pragma once

#include "kdvlri/spectral_field.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace kdv {

/// Parameters of a solver run. filter_n is the nonlinear filter cutoff N,
/// linear_cutoff the cutoff N_c = C_L*N applied to the linear part of the
/// fully discrete scheme, mode_cap the spectral resolution of the state.
struct SchemeConfig {
  double tau = 0.0;
  double horizon = 0.0;
  int filter_n = 0;
  int linear_cutoff = 0;
  double c_l = 1.0;
  int mode_cap = 0;

  void validate() const;
  long step_count() const;

  /// Config with the step/filter coupling N = prefactor*tau^{-1/(2-2s)+eps}
  /// applied; mode_cap = 0 picks the default max(linear_cutoff, 2*filter_n).
  static SchemeConfig coupled(double tau, double horizon, double s, double epsilon = 0.0,
                              double prefactor = 1.0, bool power_of_two = false, double c_l = 1.0,
                              int mode_cap = 0);
};

enum class Scheme { semi_discrete, fully_discrete };

/// Time nodes sigma_n = n*tau and the recorded states (possibly thinned).
struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> states;
};

/// Thrown when a run produces non-finite data or the L2 norm exceeds 1e8x
/// its initial value.
struct BlowupError : std::runtime_error {
  long step;
  explicit BlowupError(long step_, const std::string& what_) : std::runtime_error(what_), step(step_) {}
};

/// One step of the filtered low-regularity integrator in closed form:
///   u -> e^{-tau d^3} u + (1/6) P_N (e^{-tau d^3} d^{-1} P_N u)^2
///                       - (1/6) P_N e^{-tau d^3} (d^{-1} P_N u)^2.
/// Requires a (numerically) zero-mean state; conserves the mean exactly and
/// preserves realness.
SpectralField lri_step(const SpectralField& u, double tau, int filter_n);

/// The same step evaluated directly from its Duhamel integral, mode pair by
/// mode pair: an O(N^2) independent route used as ground truth for the
/// closed form. For each output mode k != 0 the pairs k1+k2 = k contribute
///   (1/2)(i kap_k) e^{-(i kap_k)^3 tau} Phi(alpha,tau) c_{k1} c_{k2},
/// with alpha = (i kap_k)^3 - (i kap_{k1})^3 - (i kap_{k2})^3 and
/// Phi = (e^{alpha tau}-1)/alpha (tau at alpha = 0).
SpectralField lri_step_oracle(const SpectralField& u, double tau, int filter_n);

/// The scheme's interpolant on [t_n, t_n + tau_step]: the step formula with
/// tau replaced by dt. dt = 0 returns u unchanged, dt = tau_step equals
/// lri_step. Refuses dt outside [0, tau_step].
SpectralField dense_output(const SpectralField& u, double dt, double tau_step, int filter_n);

/// Fully discrete step: the linear part applies the projection P_{N_c}
/// before the semigroup; the nonlinear part is lri_step's with cutoff
/// filter_n. The initial state must be pre-projected by the caller (evolve
/// does this).
SpectralField fully_discrete_step(const SpectralField& u, const SchemeConfig& cfg);

/// Filter/step coupling N = round(prefactor * tau^{-1/(2-2s)+epsilon}),
/// optionally snapped to the nearest power of two (linear distance, ties
/// down); always >= 1. Requires s in (-1/2, 0] and tau in (0, 1].
int choose_filter(double tau, double s, double epsilon = 0.0, double prefactor = 1.0,
                  bool power_of_two = false);

/// (m, phi - m): the mean and the zero-mean remainder phi - P_0 phi.
std::pair<double, SpectralField> zero_mean_split(const SpectralField& phi);

/// Undo the zero-mean reduction: u(t, x) = u_tilde(t, x + t*m) + m, i.e.
/// translate(u_tilde, -t*m) with m added back to mode zero.
SpectralField recompose(const SpectralField& u_tilde, double m, double t);

/// March the chosen scheme horizon/tau steps from phi (which must be
/// mean-zero), recording every snapshot_stride-th state plus the final one.
Trajectory evolve(const SpectralField& phi, const SchemeConfig& cfg, Scheme scheme,
                  long snapshot_stride);

/// Precomputed-multiplier stepper used by evolve; one instance per
/// (period, resolution, dt, filters) combination. A single instance must not
/// be shared across concurrent step() calls (it reuses scratch buffers);
/// evolve owns one per run.
class LriStepper {
public:
  /// linear_cutoff < 0 means no projection on the linear part.
  LriStepper(double period, int state_max_mode, double dt, int filter_n, int linear_cutoff = -1);

  SpectralField step(const SpectralField& u) const;

private:
  /// Coefficients of P_K (f^2) for a band-limited f, via a transform padded
  /// to n > 2*band + keep so every kept mode is alias-free.
  std::vector<cplx> square_keep(const std::vector<cplx>& coeffs, int band, int keep) const;

  double period_;
  int mode_cap_;
  double dt_;
  int filter_n_;
  int linear_cutoff_;
  std::vector<cplx> lin_; // e^{i dt kap_k^3}, k in [-mode_cap, mode_cap]
  mutable std::vector<cplx> bins_, vals_; // transform scratch
};

} // namespace kdv
