#include "kdvlri/csv_io.hpp"
#include "kdvlri/experiments.hpp"
#include "kdvlri/fft_backend.hpp"
#include "kdvlri/integrator.hpp"
#include "kdvlri/rough_data.hpp"
#include "kdvlri/selfcheck.hpp"
#include "kdvlri/sobolev.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

namespace {

using kdv::parse_real;

// Every numeric flag accepts decimals alongside "2^-16" and "pi/32" notation,
// so options are parsed as strings first.
struct CommonOpts {
  std::string s = "0";
  std::string tau = "2^-10";
  std::string horizon = "1";
  std::string modes = "2^10";
  std::string period = "2pi";
  std::string amplitude = "0.1";
  std::string decay_offset = "0.501";
  std::string phase = "alternating_cos";
  std::uint64_t seed = 0;
  std::string c_l = "1";
  std::string epsilon = "0";
  std::string prefactor = "1";
  bool no_power_of_two = false;
  std::string scheme = "semi";
  std::string filter = "0"; // 0 = coupled via choose_filter
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_tau = true) {
  cmd->add_option("--s", o.s, "Initial-data regularity s in (-1/2, 0]")->capture_default_str();
  if (with_tau)
    cmd->add_option("--tau", o.tau, "Time step (accepts 2^-k notation)")->capture_default_str();
  cmd->add_option("--T,--horizon", o.horizon, "Final time")->capture_default_str();
  cmd->add_option("--modes", o.modes, "Spectral resolution (mode cap)")->capture_default_str();
  cmd->add_option("--period", o.period, "Torus length")->capture_default_str();
  cmd->add_option("--amplitude", o.amplitude, "Datum amplitude prefactor")->capture_default_str();
  cmd->add_option("--decay-offset", o.decay_offset, "Datum decay offset (default 0.501)")
      ->capture_default_str();
  cmd->add_option("--phase", o.phase, "Phase choice: unit|alternating_cos|random_unit")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "RNG seed for random_unit phases")->capture_default_str();
  cmd->add_option("--c-l", o.c_l, "Linear cutoff constant C_L >= 1")->capture_default_str();
  cmd->add_option("--epsilon", o.epsilon, "Exponent slack in the filter coupling")
      ->capture_default_str();
  cmd->add_option("--prefactor", o.prefactor, "Prefactor in the filter coupling")
      ->capture_default_str();
  cmd->add_flag("--no-power-of-two", o.no_power_of_two,
                "Round the coupled filter to the nearest integer instead of a power of two");
  cmd->add_option("--scheme", o.scheme, "semi|fully (project the linear part by N_c)")
      ->capture_default_str();
  cmd->add_option("--filter", o.filter, "Explicit filter cutoff N (0 = couple to tau)")
      ->capture_default_str();
  cmd->add_option("--out-dir", o.out_dir, "Output directory (default $KDVLRI_OUT_DIR or ./out)");
}

std::string resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("KDVLRI_OUT_DIR"); env && *env) return env;
  return "out";
}

kdv::RoughDataSpec data_spec(const CommonOpts& o) {
  kdv::RoughDataSpec spec;
  spec.s = parse_real(o.s);
  spec.amplitude = parse_real(o.amplitude);
  spec.decay_offset = parse_real(o.decay_offset);
  spec.phase = kdv::phase_from_string(o.phase);
  spec.seed = o.seed;
  spec.max_mode = static_cast<int>(parse_real(o.modes));
  return spec;
}

kdv::Scheme scheme_of(const std::string& name) {
  if (name == "semi" || name == "semi_discrete") return kdv::Scheme::semi_discrete;
  if (name == "fully" || name == "fully_discrete") return kdv::Scheme::fully_discrete;
  throw std::invalid_argument("unknown scheme: " + name + " (expected semi|fully)");
}

int resolve_filter(const CommonOpts& o, double tau, double s, int mode_cap) {
  const int explicit_n = static_cast<int>(parse_real(o.filter));
  if (explicit_n > 0) return std::min(explicit_n, mode_cap);
  return std::min(kdv::choose_filter(tau, s, parse_real(o.epsilon), parse_real(o.prefactor),
                                     !o.no_power_of_two),
                  mode_cap);
}

// Accumulates written artifacts and finishes with a manifest carrying the
// config echo plus content checksums.
class OutputDir {
public:
  OutputDir(std::string dir, nlohmann::json config) : dir_(std::move(dir)), config_(std::move(config)) {
    std::filesystem::create_directories(dir_);
  }

  std::string write(const std::string& name, const std::string& content) {
    const std::string path = (std::filesystem::path(dir_) / name).string();
    kdv::write_file(path, content);
    record(name, content);
    return path;
  }

  void record(const std::string& name, const std::string& content) {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(kdv::fnv1a64(content)));
    nlohmann::json a;
    a["path"] = name;
    a["bytes"] = content.size();
    a["fnv1a64"] = hash;
    artifacts_.push_back(a);
  }

  void finish(const std::string& command) {
    nlohmann::json m;
    m["command"] = command;
    m["config"] = config_;
    m["artifacts"] = artifacts_;
    kdv::write_file((std::filesystem::path(dir_) / "manifest.json").string(), m.dump(2) + "\n");
  }

  const std::string& dir() const { return dir_; }

private:
  std::string dir_;
  nlohmann::json config_;
  nlohmann::json artifacts_ = nlohmann::json::array();
};

nlohmann::json echo_common(const CommonOpts& o) {
  nlohmann::json j;
  j["s"] = parse_real(o.s);
  j["horizon"] = parse_real(o.horizon);
  j["modes"] = static_cast<int>(parse_real(o.modes));
  j["period"] = parse_real(o.period);
  j["amplitude"] = parse_real(o.amplitude);
  j["decay_offset"] = parse_real(o.decay_offset);
  j["phase"] = o.phase;
  j["seed"] = o.seed;
  j["c_l"] = parse_real(o.c_l);
  j["epsilon"] = parse_real(o.epsilon);
  j["prefactor"] = parse_real(o.prefactor);
  j["power_of_two"] = !o.no_power_of_two;
  j["scheme"] = o.scheme;
  return j;
}

int run_solve(const CommonOpts& o, const std::string& stride_str, int grid_points) {
  const double tau = parse_real(o.tau);
  const double horizon = parse_real(o.horizon);
  const double s = parse_real(o.s);
  const int mode_cap = static_cast<int>(parse_real(o.modes));

  kdv::SchemeConfig cfg;
  cfg.tau = tau;
  cfg.horizon = horizon;
  cfg.c_l = parse_real(o.c_l);
  cfg.mode_cap = mode_cap;
  cfg.filter_n = resolve_filter(o, tau, s, mode_cap);
  cfg.linear_cutoff = std::min(
      std::max(static_cast<int>(std::lround(cfg.c_l * cfg.filter_n)), cfg.filter_n), mode_cap);
  cfg.validate();

  const kdv::RoughDataSpec spec = data_spec(o);
  const kdv::SpectralField phi = kdv::generate(spec, parse_real(o.period));

  long stride = static_cast<long>(parse_real(stride_str));
  if (stride <= 0) stride = cfg.step_count(); // final snapshot only

  const kdv::Trajectory traj = kdv::evolve(phi, cfg, scheme_of(o.scheme), stride);

  nlohmann::json config = echo_common(o);
  config["tau"] = tau;
  config["filter_n"] = cfg.filter_n;
  config["linear_cutoff"] = cfg.linear_cutoff;
  config["stride"] = stride;
  OutputDir out(resolve_out_dir(o.out_dir), config);

  nlohmann::json times = nlohmann::json::array();
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "state_%04zu.csv", i);
    out.write(name, kdv::spectral_csv(traj.states[i]));
    times.push_back(traj.times[i]);
  }
  const int grid = grid_points > 0 ? grid_points : kdv::fft::padded_size(mode_cap);
  out.write("final_real.csv", kdv::real_space_csv(traj.states.back(), grid));
  out.write("times.json", nlohmann::json{{"times", times}}.dump(2) + "\n");
  out.finish("solve");

  std::printf("solve: %ld steps, N=%d, N_c=%d, final H^0 norm %.6g, outputs in %s\n",
              cfg.step_count(), cfg.filter_n, cfg.linear_cutoff,
              traj.states.back().l2_norm(), out.dir().c_str());
  return 0;
}

int run_converge(const CommonOpts& o, const std::string& tau_coarse, const std::string& tau_fine,
                 const std::string& tau_ref, bool no_ref_check, bool paper_exact, int threads) {
  kdv::RoughDataSpec spec = data_spec(o);
  kdv::StudyConfig cfg;
  cfg.horizon = parse_real(o.horizon);
  cfg.mode_cap = static_cast<int>(parse_real(o.modes));
  cfg.c_l = parse_real(o.c_l);
  cfg.epsilon = parse_real(o.epsilon);
  cfg.prefactor = parse_real(o.prefactor);
  cfg.power_of_two = !o.no_power_of_two;
  cfg.scheme = scheme_of(o.scheme);
  cfg.period = parse_real(o.period);
  cfg.check_reference = !no_ref_check;
  cfg.threads = threads;

  double ref = parse_real(tau_ref);
  if (paper_exact) {
    cfg.mode_cap = 1 << 14;
    spec.max_mode = 1 << 14;
    ref = spec.s == 0.0 ? std::pow(2.0, -20) : std::pow(2.0, -25);
    std::fprintf(stderr, "note: paper-exact configuration selected; expect a long run\n");
  }

  std::vector<double> ladder;
  const double fine = parse_real(tau_fine);
  for (double t = parse_real(tau_coarse); t >= fine * (1.0 - 1e-12); t /= 2.0)
    ladder.push_back(t);
  if (ladder.empty()) throw std::invalid_argument("converge: empty tau ladder");

  const kdv::ConvergenceReport report = kdv::convergence_study(spec, ladder, ref, cfg);

  nlohmann::json config = echo_common(o);
  config["tau_coarse"] = ladder.front();
  config["tau_fine"] = ladder.back();
  config["tau_ref"] = ref;
  config["check_reference"] = cfg.check_reference;
  OutputDir out(resolve_out_dir(o.out_dir), config);
  out.write("report.csv", report.to_csv());
  out.write("report.json", report.to_json());
  out.finish("converge");

  std::printf("converge: fitted rate %.4f (theory %.4f), reference N=%d, outputs in %s\n",
              report.fitted_rate, report.theory, report.n_ref, out.dir().c_str());
  if (report.unconverged_reference)
    std::printf("warning: reference not converged (consistency %.3g)\n", report.ref_consistency);
  return 0;
}

int run_talbot(const CommonOpts& o, const std::string& times_str, int grid_points) {
  kdv::TalbotConfig cfg;
  cfg.tau = parse_real(o.tau);
  cfg.mode_cap = static_cast<int>(parse_real(o.modes));
  cfg.filter_n = static_cast<int>(parse_real(o.filter));
  cfg.c_l = parse_real(o.c_l);
  cfg.epsilon = parse_real(o.epsilon);
  cfg.prefactor = parse_real(o.prefactor);
  cfg.power_of_two = !o.no_power_of_two;
  cfg.scheme = scheme_of(o.scheme);
  cfg.period = parse_real(o.period);
  cfg.grid_points = grid_points;

  std::vector<double> times;
  std::string token;
  for (char c : times_str + ",") {
    if (c == ',') {
      if (!token.empty()) times.push_back(parse_real(token));
      token.clear();
    } else {
      token += c;
    }
  }

  nlohmann::json config = echo_common(o);
  config["tau"] = cfg.tau;
  config["times"] = times;
  OutputDir out(resolve_out_dir(o.out_dir), config);

  const auto snapshots = kdv::talbot_snapshots(data_spec(o), times, cfg, out.dir());
  nlohmann::json index = nlohmann::json::array();
  for (const auto& [t, path] : snapshots) {
    nlohmann::json e;
    e["time"] = t;
    e["path"] = std::filesystem::path(path).filename().string();
    index.push_back(e);
    out.record(e["path"].get<std::string>(), kdv::read_file(path));
    std::printf("talbot: t=%.10g -> %s\n", t, path.c_str());
  }
  out.write("snapshots.json", nlohmann::json{{"snapshots", index}}.dump(2) + "\n");
  out.finish("talbot");
  return 0;
}

int run_check() {
  const auto results = kdv::run_selfcheck();
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "all properties pass" : "PROPERTY FAILURES DETECTED");
  return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filtered low-regularity integrator for the periodic KdV equation"};
  app.require_subcommand(1);

  CommonOpts solve_opts, converge_opts, talbot_opts;

  auto* solve = app.add_subcommand("solve", "March the scheme and write trajectory snapshots");
  add_common(solve, solve_opts);
  std::string stride = "0";
  int solve_grid = 0;
  solve->add_option("--stride", stride, "Record every k-th state (0 = final only)")
      ->capture_default_str();
  solve->add_option("--grid-points", solve_grid, "Real-space grid for the final snapshot");

  auto* converge = app.add_subcommand("converge", "Self-convergence study with rate fit");
  add_common(converge, converge_opts, /*with_tau=*/false);
  std::string tau_coarse = "2^-8", tau_fine = "2^-14", tau_ref = "2^-18";
  bool no_ref_check = false, paper_exact = false;
  int threads = 0;
  converge->add_option("--tau-coarse", tau_coarse, "Coarsest ladder step")->capture_default_str();
  converge->add_option("--tau-fine", tau_fine, "Finest ladder step")->capture_default_str();
  converge->add_option("--tau-ref", tau_ref, "Reference step")->capture_default_str();
  converge->add_flag("--no-ref-check", no_ref_check, "Skip the tau_ref/2 consistency reference");
  converge->add_flag("--paper-exact", paper_exact,
                     "Full-scale configuration (2^14 modes, reference 2^-20 or 2^-25)");
  converge->add_option("--threads", threads, "Worker threads (0 = hardware)");

  auto* talbot = app.add_subcommand("talbot", "Real-space snapshots at requested times");
  add_common(talbot, talbot_opts);
  std::string times = "1,pi/32";
  int talbot_grid = 0;
  talbot->add_option("--times", times, "Comma-separated snapshot times")->capture_default_str();
  talbot->add_option("--grid-points", talbot_grid, "Real-space grid size");

  app.add_subcommand("check", "Run the oracle/invariant self-test suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("solve")) return run_solve(solve_opts, stride, solve_grid);
    if (app.got_subcommand("converge"))
      return run_converge(converge_opts, tau_coarse, tau_fine, tau_ref, no_ref_check, paper_exact,
                          threads);
    if (app.got_subcommand("talbot")) return run_talbot(talbot_opts, times, talbot_grid);
    if (app.got_subcommand("check")) return run_check();
  } catch (const kdv::BlowupError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
