#include "kdvlri/experiments.hpp"

#include "kdvlri/csv_io.hpp"
#include "kdvlri/fft_backend.hpp"
#include "kdvlri/sobolev.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <limits>
#include <stdexcept>
#include <thread>

namespace kdv {

double theory_rate(double s) {
  if (!(s > -0.5) || !(s <= 0.0)) throw std::domain_error("theory_rate: s must lie in (-1/2, 0]");
  return (1.0 + 2.0 * s) / (4.0 - 4.0 * s);
}

double fit_rate(const std::vector<std::pair<double, double>>& rows) {
  if (rows.size() < 2) throw std::invalid_argument("fit_rate: need at least two rows");
  double sx = 0.0, sy = 0.0;
  for (const auto& [tau, err] : rows) {
    if (!(tau > 0.0) || !(err > 0.0))
      throw std::invalid_argument("fit_rate: tau and error must be positive");
    sx += std::log(tau);
    sy += std::log(err);
  }
  const double mx = sx / static_cast<double>(rows.size());
  const double my = sy / static_cast<double>(rows.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [tau, err] : rows) {
    const double dx = std::log(tau) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(err) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_rate: tau values must be distinct");
  return sxy / sxx;
}

std::string to_string(RowStatus s) {
  switch (s) {
    case RowStatus::ok: return "ok";
    case RowStatus::failed: return "failed";
    case RowStatus::floored: return "floored";
  }
  throw std::logic_error("unreachable status");
}

namespace {

struct RunJob {
  double tau = 0.0;
  int filter_n = 0;
  bool done = false;
  bool blew_up = false;
  SpectralField final_state = SpectralField::zero(1.0, 0);
};

SchemeConfig job_config(double tau, int filter_n, const StudyConfig& cfg) {
  SchemeConfig sc;
  sc.tau = tau;
  sc.horizon = cfg.horizon;
  sc.c_l = cfg.c_l;
  sc.mode_cap = cfg.mode_cap;
  sc.filter_n = std::min(filter_n, cfg.mode_cap);
  sc.linear_cutoff =
      std::min(std::max(static_cast<int>(std::lround(cfg.c_l * sc.filter_n)), sc.filter_n),
               cfg.mode_cap);
  sc.validate();
  return sc;
}

void run_jobs(std::vector<RunJob>& jobs, const SpectralField& phi, const StudyConfig& cfg) {
  std::atomic<std::size_t> next{0};
  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t workers =
      std::min<std::size_t>(jobs.size(), cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                                         : std::max(hw, 1u));
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      RunJob& job = jobs[i];
      try {
        const SchemeConfig sc = job_config(job.tau, job.filter_n, cfg);
        const Trajectory traj = evolve(phi, sc, cfg.scheme, sc.step_count());
        job.final_state = traj.states.back();
        job.done = true;
      } catch (const BlowupError&) {
        job.blew_up = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

} // namespace

ConvergenceReport convergence_study(const RoughDataSpec& spec, std::vector<double> tau_ladder,
                                    double tau_ref, const StudyConfig& cfg) {
  if (tau_ladder.empty()) throw std::invalid_argument("convergence_study: empty ladder");
  std::sort(tau_ladder.begin(), tau_ladder.end(), std::greater<>());
  if (!(tau_ref < tau_ladder.back() / 8.0))
    throw std::invalid_argument("convergence_study: tau_ref must be < min(ladder)/8");

  const SpectralField phi = generate(spec, cfg.period);

  std::vector<RunJob> jobs;
  for (double tau : tau_ladder)
    jobs.push_back(
        {tau, choose_filter(tau, spec.s, cfg.epsilon, cfg.prefactor, cfg.power_of_two)});
  // The reference is refined beyond its coupled filter so that its own
  // spatial truncation sits below the ladder errors being measured.
  const int n_ref_coupled =
      choose_filter(tau_ref, spec.s, cfg.epsilon, cfg.prefactor, cfg.power_of_two);
  const int n_ref = cfg.ref_filter > 0
                        ? std::min(cfg.ref_filter, cfg.mode_cap)
                        : std::min(n_ref_coupled << std::max(cfg.ref_refine, 0), cfg.mode_cap);
  const std::size_t ref_idx = jobs.size();
  jobs.push_back({tau_ref, n_ref});
  std::size_t ref2_idx = 0;
  if (cfg.check_reference) {
    // The consistency reference keeps the primary reference's filter: halving
    // only tau isolates the reference's time-convergence floor, which is what
    // the fit exclusion below compares errors against.
    ref2_idx = jobs.size();
    jobs.push_back({tau_ref / 2.0, jobs[ref_idx].filter_n});
  }
  // Validate every configuration up front so bad parameters surface as
  // exceptions rather than failed rows.
  for (const auto& job : jobs) job_config(job.tau, job.filter_n, cfg);

  run_jobs(jobs, phi, cfg);

  if (!jobs[ref_idx].done)
    throw std::runtime_error("convergence_study: the reference run blew up");
  const SpectralField& reference = jobs[ref_idx].final_state;

  ConvergenceReport report;
  report.s = spec.s;
  report.phase = spec.phase;
  report.mode_cap = cfg.mode_cap;
  report.horizon = cfg.horizon;
  report.tau_ref = tau_ref;
  report.n_ref = jobs[ref_idx].filter_n;
  report.n_ref_coupled = n_ref_coupled;
  report.theory = theory_rate(spec.s);
  report.ref_consistency = std::numeric_limits<double>::quiet_NaN();
  if (cfg.check_reference) {
    if (!jobs[ref2_idx].done)
      throw std::runtime_error("convergence_study: the consistency reference run blew up");
    report.ref_consistency = h_error(reference, jobs[ref2_idx].final_state, -0.5);
  }

  double min_ok_error = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < tau_ladder.size(); ++i) {
    LadderRow row;
    row.tau = jobs[i].tau;
    row.filter_n = jobs[i].filter_n;
    if (jobs[i].blew_up) {
      row.error = std::numeric_limits<double>::quiet_NaN();
      row.status = RowStatus::failed;
    } else {
      row.error = h_error(jobs[i].final_state, reference, -0.5);
      row.status = RowStatus::ok;
      min_ok_error = std::min(min_ok_error, row.error);
    }
    report.rows.push_back(row);
  }

  if (cfg.check_reference) {
    report.unconverged_reference = !(report.ref_consistency < min_ok_error / 4.0);
    for (auto& row : report.rows)
      if (row.status == RowStatus::ok && row.error <= 10.0 * report.ref_consistency)
        row.status = RowStatus::floored;
  }

  std::vector<std::pair<double, double>> fit_rows;
  for (const auto& row : report.rows)
    if (row.status == RowStatus::ok) fit_rows.emplace_back(row.tau, row.error);
  if (fit_rows.size() < 2)
    throw std::runtime_error("convergence_study: fewer than two usable ladder points");
  report.fitted_rate = fit_rate(fit_rows);
  return report;
}

std::string ConvergenceReport::to_csv() const {
  std::string out = "tau,N,error_Hneg12,status\n";
  for (const auto& row : rows) {
    out += format_double(row.tau);
    out += ',';
    out += std::to_string(row.filter_n);
    out += ',';
    out += format_double(row.error);
    out += ',';
    out += to_string(row.status);
    out += '\n';
  }
  out += "# fitted_rate=" + format_double(fitted_rate) + "\n";
  out += "# theory_rate=" + format_double(theory) + "\n";
  out += "# tau_ref=" + format_double(tau_ref) + "\n";
  out += "# n_ref=" + std::to_string(n_ref) + "\n";
  out += "# n_ref_coupled=" + std::to_string(n_ref_coupled) + "\n";
  out += "# ref_consistency=" + format_double(ref_consistency) + "\n";
  out += "# unconverged_reference=" + std::string(unconverged_reference ? "1" : "0") + "\n";
  return out;
}

std::string ConvergenceReport::to_json() const {
  nlohmann::json j;
  j["s"] = s;
  j["phase"] = kdv::to_string(phase);
  j["mode_cap"] = mode_cap;
  j["horizon"] = horizon;
  j["fitted_rate"] = fitted_rate;
  j["theory_rate"] = theory;
  j["tau_ref"] = tau_ref;
  j["n_ref"] = n_ref;
  j["n_ref_coupled"] = n_ref_coupled;
  j["ref_consistency"] = ref_consistency;
  j["unconverged_reference"] = unconverged_reference;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json r;
    r["tau"] = row.tau;
    r["N"] = row.filter_n;
    r["error_Hneg12"] = row.error;
    r["status"] = kdv::to_string(row.status);
    j["rows"].push_back(r);
  }
  return j.dump(2) + "\n";
}

std::vector<std::pair<double, std::string>> talbot_snapshots(const RoughDataSpec& spec,
                                                             std::vector<double> times,
                                                             const TalbotConfig& cfg,
                                                             const std::string& out_dir) {
  if (times.empty()) throw std::invalid_argument("talbot_snapshots: no times requested");
  for (double t : times)
    if (!(t >= 0.0) || !std::isfinite(t))
      throw std::invalid_argument("talbot_snapshots: times must be finite and >= 0");
  if (!(cfg.tau > 0.0)) throw std::invalid_argument("talbot_snapshots: tau must be positive");
  std::sort(times.begin(), times.end());

  const int filter_n =
      cfg.filter_n > 0
          ? std::min(cfg.filter_n, cfg.mode_cap)
          : std::min(choose_filter(cfg.tau, spec.s, cfg.epsilon, cfg.prefactor, cfg.power_of_two),
                     cfg.mode_cap);
  const int grid = cfg.grid_points > 0 ? cfg.grid_points : fft::padded_size(cfg.mode_cap);

  SpectralField state = extend(generate(spec, cfg.period), cfg.mode_cap);
  const int linear_cutoff =
      std::min(std::max(static_cast<int>(std::lround(cfg.c_l * filter_n)), filter_n),
               cfg.mode_cap);
  if (cfg.scheme == Scheme::fully_discrete)
    state = extend(project(state, linear_cutoff), cfg.mode_cap);
  const double l2_initial = state.l2_norm();

  LriStepper stepper(cfg.period, cfg.mode_cap, cfg.tau, filter_n,
                     cfg.scheme == Scheme::fully_discrete ? linear_cutoff : -1);

  std::filesystem::create_directories(out_dir);
  std::vector<std::pair<double, std::string>> out;
  long step = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const long full_steps = static_cast<long>(std::floor(t / cfg.tau * (1.0 + 1e-12)));
    while (step < full_steps) {
      state = stepper.step(state);
      ++step;
      const double l2 = state.l2_norm();
      if (!std::isfinite(l2) || (l2_initial > 0.0 && l2 > 1e8 * l2_initial))
        throw BlowupError(step, "talbot_snapshots: blow-up at step " + std::to_string(step));
    }
    const double dt = t - static_cast<double>(full_steps) * cfg.tau;
    const SpectralField snap =
        dt > 0.0 ? dense_output(state, std::min(dt, cfg.tau), cfg.tau, filter_n) : state;
    char name[32];
    std::snprintf(name, sizeof(name), "talbot_%03zu.csv", i);
    const std::string path = (std::filesystem::path(out_dir) / name).string();
    write_file(path, real_space_csv(snap, grid));
    out.emplace_back(t, path);
  }
  return out;
}

} // namespace kdv
