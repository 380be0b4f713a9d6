// bindings.cpp — Python module exposing the main library operations.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rcme/run.hpp"

#include <cmath>
#include <stdexcept>

namespace py = pybind11;
using namespace rcme;

namespace {

bath::SpectralKind kind_from_string(const std::string& name) {
  if (name == "ohmic") return bath::SpectralKind::ohmic;
  if (name == "ohmic-exponential-cutoff") return bath::SpectralKind::ohmic_exp_cutoff;
  if (name == "ohmic-sharp-cutoff") return bath::SpectralKind::ohmic_sharp_cutoff;
  throw std::invalid_argument("unknown spectral density kind \"" + name + "\"");
}

rates::Method rate_method_from_string(const std::string& name) {
  if (name == "exact-cutoff") return rates::Method::exact_cutoff;
  if (name == "star") return rates::Method::star;
  if (name == "doublestar") return rates::Method::doublestar;
  if (name == "markov") return rates::Method::markov;
  throw std::invalid_argument("unknown rate method \"" + name + "\"");
}

rates::RateKernel make_kernel(const bath::BathModel& b, const std::string& method,
                              double rel_tol) {
  rates::RateKernel kernel;
  kernel.method = rate_method_from_string(method);
  kernel.bath = b;
  if (rel_tol > 0.0) {
    kernel.quadrature.rel_tol = rel_tol;
  }
  return kernel;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite-time cumulant and Davies evolutions of small open quantum systems";

  py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<quad::QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);
  py::register_exception<models::InvariantError>(m, "InvariantError", PyExc_RuntimeError);

  py::class_<bath::BathModel>(m, "Bath")
      .def_property_readonly(
          "kind", [](const bath::BathModel& b) { return bath::to_string(b.spectral.kind); })
      .def_property_readonly("alpha",
                             [](const bath::BathModel& b) { return b.spectral.alpha; })
      .def_property_readonly("omega_c",
                             [](const bath::BathModel& b) { return b.spectral.omega_c; })
      .def_readonly("T_eff", &bath::BathModel::T_eff)
      .def("__repr__", [](const bath::BathModel& b) {
        return "Bath(kind=" + bath::to_string(b.spectral.kind) +
               ", alpha=" + std::to_string(b.spectral.alpha) +
               ", T_eff=" + std::to_string(b.T_eff) + ")";
      });

  m.def(
      "make_bath",
      [](const std::string& kind, double alpha, double omega_c, double T_eff) {
        return bath::make_bath(kind_from_string(kind), alpha, omega_c, T_eff);
      },
      py::arg("kind"), py::arg("alpha"), py::arg("omega_c") = 0.0, py::arg("T_eff") = 0.0,
      "Validated bath with an ohmic-family spectral density.");

  m.def("spectral_density",
        [](const bath::BathModel& b, double w) { return bath::spectral_J(b.spectral, w); },
        py::arg("bath"), py::arg("omega"), "Spectral density J(omega) for omega >= 0.");
  m.def("occupation", &bath::occupation, py::arg("T_eff"), py::arg("omega"),
        "Bose-Einstein occupation at omega > 0.");
  m.def("rate", &bath::rate_r, py::arg("bath"), py::arg("omega"),
        "Full-line rate function R(omega) = J(omega) (N(omega) + 1).");

  py::class_<models::Model>(m, "Model")
      .def_property_readonly(
          "hamiltonian", [](const models::Model& mod) { return mod.system.hamiltonian; })
      .def_property_readonly("couplings",
                             [](const models::Model& mod) { return mod.system.couplings; })
      .def_readonly("bath", &models::Model::bath)
      .def_property_readonly("bohr_frequencies", [](const models::Model& mod) {
        return generators::bohr_decompose(mod.system).frequencies;
      });

  m.def(
      "spin_boson",
      [](double alpha, double T_eff, const std::string& kind, double omega_c) {
        return models::spin_boson(alpha, T_eff, kind_from_string(kind), omega_c);
      },
      py::arg("alpha"), py::arg("T_eff"), py::arg("kind") = "ohmic", py::arg("omega_c") = 0.0,
      "Two-level system at unit splitting coupled through sigma_x.");
  m.def("qutrit_boson", &models::qutrit_boson, py::arg("alpha"), py::arg("T_eff"),
        py::arg("delta_omega"),
        "Three-level V system with upper splitting delta_omega, plain ohmic bath.");

  m.def(
      "gamma",
      [](const bath::BathModel& b, const std::string& method, double w, double wp, double t,
         double rel_tol) -> linalg::Complex {
        const auto kernel = make_kernel(b, method, rel_tol);
        switch (kernel.method) {
          case rates::Method::exact_cutoff:
            return rates::gamma_exact_cutoff(kernel, w, wp, t);
          case rates::Method::star:
            return rates::gamma_star(kernel, w, wp, t);
          case rates::Method::doublestar:
            return rates::gamma_doublestar(kernel, w, wp, t);
          case rates::Method::markov:
            if (w != wp) {
              throw std::invalid_argument("markov rates are diagonal in frequency");
            }
            return rates::gamma_markov(kernel, w);
        }
        throw std::logic_error("unreachable");
      },
      py::arg("bath"), py::arg("method"), py::arg("w"), py::arg("wp"), py::arg("t"),
      py::arg("rel_tol") = 0.0, "Two-frequency rate gamma(w, wp, t) for a scalar bath.");

  m.def(
      "gamma_matrix",
      [](const bath::BathModel& b, const std::string& method,
         const std::vector<double>& omegas, double t, double rel_tol) {
        return rates::assemble_gamma_matrix(make_kernel(b, method, rel_tol), omegas, t);
      },
      py::arg("bath"), py::arg("method"), py::arg("omegas"), py::arg("t"),
      py::arg("rel_tol") = 0.0,
      "Positive semidefinite matrix of gamma(w, wp, t) over a frequency list.");

  m.def(
      "propagate",
      [](const models::Model& model, const std::string& method, const linalg::Matrix& rho0,
         const std::vector<double>& times, double gap_threshold, double rel_tol) {
        generators::PropagationOptions options;
        const auto parsed = generators::evolution_method_from_string(method);
        if (!parsed) {
          throw std::invalid_argument("unknown evolution method \"" + method + "\"");
        }
        options.method = *parsed;
        options.bath = model.bath;
        options.gap_threshold = gap_threshold;
        if (rel_tol > 0.0) {
          options.quadrature.rel_tol = rel_tol;
        }
        const auto result =
            generators::propagate(model.system, options, models::make_density(rho0), times);
        py::dict out;
        out["times"] = result.schrodinger.times;
        out["schrodinger"] = result.schrodinger.states;
        out["interaction"] = result.interaction.states;
        std::vector<double> trace_defects, min_eigenvalues;
        for (const auto& d : result.diagnostics) {
          trace_defects.push_back(d.trace_defect);
          min_eigenvalues.push_back(d.min_eigenvalue);
        }
        out["trace_defects"] = trace_defects;
        out["min_eigenvalues"] = min_eigenvalues;
        return out;
      },
      py::arg("model"), py::arg("method"), py::arg("rho0"), py::arg("times"),
      py::arg("gap_threshold") = 0.0, py::arg("rel_tol") = 0.0,
      "Evolve rho0 over the given times; returns per-picture states and diagnostics.");

  m.def("gibbs_state", &models::gibbs_state, py::arg("hamiltonian"), py::arg("T_eff"),
        "exp(-H/T) / Z; the ground-space projector at T_eff = 0.");
  m.def("trace_distance", &models::trace_distance, py::arg("a"), py::arg("b"));

  m.def(
      "is_cptp",
      [](const linalg::Matrix& mat, double tol) {
        const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(
            static_cast<double>(mat.rows()))));
        if (dim * dim != mat.rows() || mat.rows() != mat.cols()) {
          throw std::invalid_argument("map matrix must be d^2 x d^2");
        }
        const auto report = linalg::is_cptp({dim, mat}, tol);
        py::dict out;
        out["cptp"] = report.cptp;
        out["min_choi_eigenvalue"] = report.min_choi_eigenvalue;
        out["trace_defect"] = report.trace_defect;
        out["hermiticity_defect"] = report.hermiticity_defect;
        return out;
      },
      py::arg("map_matrix"), py::arg("tol") = 1e-8,
      "Complete positivity and trace preservation of a vectorised map.");

  m.def(
      "run_config",
      [](const std::string& text, const std::string& out_dir) {
        const auto config = cli::parse_config(text, "<python>");
        const auto artifacts = cli::run(config, out_dir);
        py::dict out;
        out["schrodinger_csv"] = artifacts.schrodinger_csv;
        out["interaction_csv"] = artifacts.interaction_csv;
        out["report_json"] = artifacts.report_json;
        return out;
      },
      py::arg("config_json"), py::arg("out_dir"),
      "Parse a JSON configuration document and run it; returns artifact paths.");
}
