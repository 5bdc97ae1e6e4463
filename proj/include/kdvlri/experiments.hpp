#pragma once

#include "kdvlri/integrator.hpp"
#include "kdvlri/rough_data.hpp"

#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace kdv {

/// Theorem rate (1+2s)/(4-4s) for the H^{-1/2} error; s in (-1/2, 0].
double theory_rate(double s);

/// Least-squares slope of log(error) against log(tau). Requires at least two
/// rows with distinct tau and positive errors.
double fit_rate(const std::vector<std::pair<double, double>>& rows);

enum class RowStatus { ok, failed, floored };

std::string to_string(RowStatus s);

struct LadderRow {
  double tau = 0.0;
  int filter_n = 0;
  double error = 0.0; // H^{-1/2} error against the reference; NaN when failed
  RowStatus status = RowStatus::ok;
};

/// Shared knobs of a convergence study or snapshot run.
struct StudyConfig {
  double horizon = 1.0;
  int mode_cap = 1 << 10;
  double c_l = 1.0;
  double epsilon = 0.0;
  double prefactor = 1.0;
  bool power_of_two = true;
  Scheme scheme = Scheme::semi_discrete;
  double period = 2.0 * std::numbers::pi;
  bool check_reference = true; // run a second reference at tau_ref/2
  int threads = 0;             // 0 = hardware concurrency
  /// Filter of the reference run. 0 = refine the coupled value N(tau_ref) by
  /// ref_refine octaves (capped at mode_cap); > 0 = use this cutoff as-is.
  int ref_filter = 0;
  int ref_refine = 2;
};

struct ConvergenceReport {
  double s = 0.0;
  Phase phase = Phase::unit;
  int mode_cap = 0;
  double horizon = 0.0;
  std::vector<LadderRow> rows; // sorted by decreasing tau
  double fitted_rate = 0.0;
  double theory = 0.0;
  double tau_ref = 0.0;
  int n_ref = 0;         // filter actually used by the reference
  int n_ref_coupled = 0; // the coupled value choose_filter(tau_ref)
  double ref_consistency = 0.0; // H^{-1/2} distance of the two references; NaN if unchecked
  bool unconverged_reference = false;

  std::string to_csv() const;
  std::string to_json() const;
};

/// Self-convergence study: evolve the datum for every ladder tau with the
/// coupled filter N(tau), measure the H^{-1/2} error at the horizon against
/// a reference run at tau_ref (with its own coupled filter), and fit the
/// rate. Rows that blow up are marked failed; rows whose error sits within
/// 10x the reference-consistency floor are excluded from the fit. Ladder
/// rows and references run in parallel; the result does not depend on
/// completion order.
ConvergenceReport convergence_study(const RoughDataSpec& spec, std::vector<double> tau_ladder,
                                    double tau_ref, const StudyConfig& cfg);

struct TalbotConfig {
  double tau = 0.0;
  int mode_cap = 1 << 10;
  int filter_n = 0; // 0 = couple from (tau, s)
  double c_l = 1.0;
  double epsilon = 0.0;
  double prefactor = 1.0;
  bool power_of_two = true;
  Scheme scheme = Scheme::semi_discrete;
  double period = 2.0 * std::numbers::pi;
  int grid_points = 0; // 0 = smallest alias-free power of two
};

/// March once through the requested times (each reached as n*tau + dt with
/// the dense-output tail) and write a real-space snapshot "x,u" per time.
/// Returns (time, path) pairs in ascending time order.
std::vector<std::pair<double, std::string>> talbot_snapshots(const RoughDataSpec& spec,
                                                             std::vector<double> times,
                                                             const TalbotConfig& cfg,
                                                             const std::string& out_dir);

} // namespace kdv
