#include "kdvlri/csv_io.hpp"
#include "kdvlri/experiments.hpp"
#include "kdvlri/integrator.hpp"
#include "kdvlri/rough_data.hpp"
#include "kdvlri/selfcheck.hpp"
#include "kdvlri/sobolev.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

kdv::SpectralField field_from_array(double period, const py::array_t<std::complex<double>>& arr,
                                    bool real_flagged) {
  const auto buf = arr.request();
  if (buf.ndim != 1 || buf.size % 2 == 0)
    throw std::invalid_argument("coefficient array must be 1-d with odd length 2*max_mode+1");
  const int max_mode = static_cast<int>((buf.size - 1) / 2);
  const auto* data = static_cast<const std::complex<double>*>(buf.ptr);
  return kdv::SpectralField(period, max_mode,
                            std::vector<kdv::cplx>(data, data + buf.size), real_flagged);
}

py::array_t<std::complex<double>> coeffs_array(const kdv::SpectralField& f) {
  py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(f.coeffs().size()));
  std::copy(f.coeffs().begin(), f.coeffs().end(), out.mutable_data());
  return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Filtered low-regularity integrator for the periodic KdV equation";

  py::class_<kdv::SpectralField>(m, "SpectralField")
      .def(py::init(&field_from_array), "period"_a, "coeffs"_a, "real_flagged"_a = false,
           "Build from coefficients ordered k = -max_mode..max_mode.")
      .def_static("zero", &kdv::SpectralField::zero, "period"_a, "max_mode"_a,
                  "real_flagged"_a = true)
      .def_property_readonly("period", &kdv::SpectralField::period)
      .def_property_readonly("max_mode", &kdv::SpectralField::max_mode)
      .def_property_readonly("is_real", &kdv::SpectralField::is_real)
      .def("coeff", &kdv::SpectralField::coeff, "k"_a)
      .def("coeffs", &coeffs_array, "Coefficients ordered k = -max_mode..max_mode.")
      .def("l2_norm", &kdv::SpectralField::l2_norm)
      .def("__repr__", [](const kdv::SpectralField& f) {
        return "SpectralField(period=" + kdv::format_double(f.period()) +
               ", max_mode=" + std::to_string(f.max_mode()) +
               (f.is_real() ? ", real" : "") + ")";
      });

  m.def(
      "synthesize",
      [](const kdv::SpectralField& f, int n_points) {
        const kdv::GridSamples g = kdv::synthesize(f, n_points);
        py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(g.values.size()));
        std::copy(g.values.begin(), g.values.end(), out.mutable_data());
        return out;
      },
      "f"_a, "n_points"_a, "Values at the equispaced grid x_j = j*L/n.");
  m.def(
      "analyze",
      [](double period, const py::array_t<std::complex<double>>& values, int max_mode) {
        const auto buf = values.request();
        const auto* data = static_cast<const std::complex<double>*>(buf.ptr);
        kdv::GridSamples g(period, std::vector<kdv::cplx>(data, data + buf.size));
        return kdv::analyze(g, max_mode);
      },
      "period"_a, "values"_a, "max_mode"_a);
  m.def("project", &kdv::project, "f"_a, "n"_a);
  m.def("semigroup", &kdv::semigroup, "f"_a, "t"_a);
  m.def("derivative", &kdv::derivative, "f"_a);
  m.def("antiderivative", &kdv::antiderivative, "f"_a);
  m.def("multiply", &kdv::multiply, "f"_a, "g"_a);
  m.def("translate", &kdv::translate, "f"_a, "a"_a);
  m.def("mean", &kdv::mean, "f"_a);
  m.def("h_norm", &kdv::h_norm, "f"_a, "s"_a);
  m.def("h_error", &kdv::h_error, "u"_a, "v"_a, "s"_a);

  py::class_<kdv::LambdaField>(m, "LambdaField")
      .def_property_readonly("lam", &kdv::LambdaField::lam)
      .def_property_readonly("max_index", &kdv::LambdaField::max_index)
      .def("coeff", &kdv::LambdaField::coeff, "xi"_a)
      .def("frequency", &kdv::LambdaField::frequency, "xi"_a);
  m.def("rescale", &kdv::rescale, "f"_a, "lam"_a);
  m.def("h_norm_lambda", &kdv::h_norm_lambda, "f"_a, "s"_a);

  py::enum_<kdv::Phase>(m, "Phase")
      .value("unit", kdv::Phase::unit)
      .value("alternating_cos", kdv::Phase::alternating_cos)
      .value("random_unit", kdv::Phase::random_unit);

  py::class_<kdv::RoughDataSpec>(m, "RoughDataSpec")
      .def(py::init([](double s, double amplitude, double decay_offset, kdv::Phase phase,
                       std::uint64_t seed, int max_mode) {
             kdv::RoughDataSpec spec;
             spec.s = s;
             spec.amplitude = amplitude;
             spec.decay_offset = decay_offset;
             spec.phase = phase;
             spec.seed = seed;
             spec.max_mode = max_mode;
             return spec;
           }),
           "s"_a = 0.0, "amplitude"_a = 0.1, "decay_offset"_a = 0.501,
           "phase"_a = kdv::Phase::unit, "seed"_a = 0, "max_mode"_a = 256)
      .def_readwrite("s", &kdv::RoughDataSpec::s)
      .def_readwrite("amplitude", &kdv::RoughDataSpec::amplitude)
      .def_readwrite("decay_offset", &kdv::RoughDataSpec::decay_offset)
      .def_readwrite("phase", &kdv::RoughDataSpec::phase)
      .def_readwrite("seed", &kdv::RoughDataSpec::seed)
      .def_readwrite("max_mode", &kdv::RoughDataSpec::max_mode)
      .def("to_json", &kdv::RoughDataSpec::to_json)
      .def_static("from_json", &kdv::RoughDataSpec::from_json, "text"_a);
  m.def("generate", &kdv::generate, "spec"_a, "period"_a);
  m.def("membership_profile", &kdv::membership_profile, "f"_a, "s_grid"_a);

  py::enum_<kdv::Scheme>(m, "Scheme")
      .value("semi_discrete", kdv::Scheme::semi_discrete)
      .value("fully_discrete", kdv::Scheme::fully_discrete);

  py::class_<kdv::SchemeConfig>(m, "SchemeConfig")
      .def(py::init([](double tau, double horizon, int filter_n, int linear_cutoff, double c_l,
                       int mode_cap) {
             kdv::SchemeConfig cfg;
             cfg.tau = tau;
             cfg.horizon = horizon;
             cfg.filter_n = filter_n;
             cfg.linear_cutoff = linear_cutoff > 0 ? linear_cutoff : filter_n;
             cfg.c_l = c_l;
             cfg.mode_cap = mode_cap > 0 ? mode_cap : cfg.linear_cutoff;
             cfg.validate();
             return cfg;
           }),
           "tau"_a, "horizon"_a, "filter_n"_a, "linear_cutoff"_a = 0, "c_l"_a = 1.0,
           "mode_cap"_a = 0)
      .def_static("coupled", &kdv::SchemeConfig::coupled, "tau"_a, "horizon"_a, "s"_a,
                  "epsilon"_a = 0.0, "prefactor"_a = 1.0, "power_of_two"_a = false, "c_l"_a = 1.0,
                  "mode_cap"_a = 0)
      .def_readwrite("tau", &kdv::SchemeConfig::tau)
      .def_readwrite("horizon", &kdv::SchemeConfig::horizon)
      .def_readwrite("filter_n", &kdv::SchemeConfig::filter_n)
      .def_readwrite("linear_cutoff", &kdv::SchemeConfig::linear_cutoff)
      .def_readwrite("c_l", &kdv::SchemeConfig::c_l)
      .def_readwrite("mode_cap", &kdv::SchemeConfig::mode_cap)
      .def("step_count", &kdv::SchemeConfig::step_count);

  py::class_<kdv::Trajectory>(m, "Trajectory")
      .def_readonly("times", &kdv::Trajectory::times)
      .def_readonly("states", &kdv::Trajectory::states);

  static py::exception<kdv::BlowupError> blowup(m, "BlowupError", PyExc_RuntimeError);

  m.def("lri_step", &kdv::lri_step, "u"_a, "tau"_a, "filter_n"_a);
  m.def("lri_step_oracle", &kdv::lri_step_oracle, "u"_a, "tau"_a, "filter_n"_a);
  m.def("dense_output", &kdv::dense_output, "u"_a, "dt"_a, "tau_step"_a, "filter_n"_a);
  m.def("fully_discrete_step", &kdv::fully_discrete_step, "u"_a, "cfg"_a);
  m.def("choose_filter", &kdv::choose_filter, "tau"_a, "s"_a, "epsilon"_a = 0.0,
        "prefactor"_a = 1.0, "power_of_two"_a = false);
  m.def("zero_mean_split", &kdv::zero_mean_split, "phi"_a);
  m.def("recompose", &kdv::recompose, "u_tilde"_a, "m"_a, "t"_a);
  m.def("evolve", &kdv::evolve, "phi"_a, "cfg"_a, "scheme"_a = kdv::Scheme::semi_discrete,
        "snapshot_stride"_a = 1, py::call_guard<py::gil_scoped_release>());

  m.def("theory_rate", &kdv::theory_rate, "s"_a);
  m.def("fit_rate", &kdv::fit_rate, "rows"_a);

  py::class_<kdv::StudyConfig>(m, "StudyConfig")
      .def(py::init<>())
      .def_readwrite("horizon", &kdv::StudyConfig::horizon)
      .def_readwrite("mode_cap", &kdv::StudyConfig::mode_cap)
      .def_readwrite("c_l", &kdv::StudyConfig::c_l)
      .def_readwrite("epsilon", &kdv::StudyConfig::epsilon)
      .def_readwrite("prefactor", &kdv::StudyConfig::prefactor)
      .def_readwrite("power_of_two", &kdv::StudyConfig::power_of_two)
      .def_readwrite("scheme", &kdv::StudyConfig::scheme)
      .def_readwrite("period", &kdv::StudyConfig::period)
      .def_readwrite("check_reference", &kdv::StudyConfig::check_reference)
      .def_readwrite("threads", &kdv::StudyConfig::threads)
      .def_readwrite("ref_filter", &kdv::StudyConfig::ref_filter)
      .def_readwrite("ref_refine", &kdv::StudyConfig::ref_refine);

  py::class_<kdv::LadderRow>(m, "LadderRow")
      .def_readonly("tau", &kdv::LadderRow::tau)
      .def_readonly("filter_n", &kdv::LadderRow::filter_n)
      .def_readonly("error", &kdv::LadderRow::error)
      .def_property_readonly("status",
                             [](const kdv::LadderRow& r) { return kdv::to_string(r.status); });

  py::class_<kdv::ConvergenceReport>(m, "ConvergenceReport")
      .def_readonly("s", &kdv::ConvergenceReport::s)
      .def_readonly("mode_cap", &kdv::ConvergenceReport::mode_cap)
      .def_readonly("horizon", &kdv::ConvergenceReport::horizon)
      .def_readonly("rows", &kdv::ConvergenceReport::rows)
      .def_readonly("fitted_rate", &kdv::ConvergenceReport::fitted_rate)
      .def_readonly("theory_rate", &kdv::ConvergenceReport::theory)
      .def_readonly("tau_ref", &kdv::ConvergenceReport::tau_ref)
      .def_readonly("n_ref", &kdv::ConvergenceReport::n_ref)
      .def_readonly("n_ref_coupled", &kdv::ConvergenceReport::n_ref_coupled)
      .def_readonly("ref_consistency", &kdv::ConvergenceReport::ref_consistency)
      .def_readonly("unconverged_reference", &kdv::ConvergenceReport::unconverged_reference)
      .def("to_csv", &kdv::ConvergenceReport::to_csv)
      .def("to_json", &kdv::ConvergenceReport::to_json);

  m.def("convergence_study", &kdv::convergence_study, "spec"_a, "tau_ladder"_a, "tau_ref"_a,
        "cfg"_a, py::call_guard<py::gil_scoped_release>());
  m.def("talbot_snapshots", &kdv::talbot_snapshots, "spec"_a, "times"_a, "cfg"_a, "out_dir"_a,
        py::call_guard<py::gil_scoped_release>());

  py::class_<kdv::TalbotConfig>(m, "TalbotConfig")
      .def(py::init<>())
      .def_readwrite("tau", &kdv::TalbotConfig::tau)
      .def_readwrite("mode_cap", &kdv::TalbotConfig::mode_cap)
      .def_readwrite("filter_n", &kdv::TalbotConfig::filter_n)
      .def_readwrite("c_l", &kdv::TalbotConfig::c_l)
      .def_readwrite("epsilon", &kdv::TalbotConfig::epsilon)
      .def_readwrite("prefactor", &kdv::TalbotConfig::prefactor)
      .def_readwrite("power_of_two", &kdv::TalbotConfig::power_of_two)
      .def_readwrite("scheme", &kdv::TalbotConfig::scheme)
      .def_readwrite("period", &kdv::TalbotConfig::period)
      .def_readwrite("grid_points", &kdv::TalbotConfig::grid_points);

  m.def("run_selfcheck", [] {
    py::list out;
    for (const auto& r : kdv::run_selfcheck())
      out.append(py::make_tuple(r.name, r.pass, r.detail));
    return out;
  });
}
