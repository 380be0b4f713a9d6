// generators.cpp — master-equation generators and state propagation.
#include "rcme/generators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rcme::generators {

namespace {

using linalg::Complex;
using linalg::Matrix;

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

// Jump operators flattened over the composite index a = f * m + i used by
// assemble_gamma_matrix.
std::vector<const Matrix*> flatten_ops(const std::vector<std::vector<Matrix>>& ops) {
  std::vector<const Matrix*> flat;
  for (const auto& per_freq : ops) {
    for (const auto& op : per_freq) {
      flat.push_back(&op);
    }
  }
  return flat;
}

// sum_ab gamma_ab (A_a rho A_b^dag - (1/2) {A_b^dag A_a, rho}).
Superoperator accumulate_dissipators(Eigen::Index dim, const std::vector<const Matrix*>& ops,
                                     const Matrix& gamma) {
  if (gamma.rows() != static_cast<Eigen::Index>(ops.size())) {
    throw std::invalid_argument(
        "accumulate_dissipators: gamma matrix does not match the jump operator count");
  }
  Superoperator total{dim, Matrix::Zero(dim * dim, dim * dim)};
  for (Eigen::Index a = 0; a < gamma.rows(); ++a) {
    if (ops[static_cast<std::size_t>(a)]->norm() == 0.0) {
      continue;
    }
    for (Eigen::Index b = 0; b < gamma.cols(); ++b) {
      const Complex g = gamma(a, b);
      if (g == Complex(0.0, 0.0) || ops[static_cast<std::size_t>(b)]->norm() == 0.0) {
        continue;
      }
      total.mat += g * linalg::dissipator_super(*ops[static_cast<std::size_t>(a)],
                                                *ops[static_cast<std::size_t>(b)])
                           .mat;
    }
  }
  return total;
}

void check_channels(const BohrDecomposition& dec, const bath::BathModel& b) {
  if (dec.jump_ops.empty()) {
    throw std::invalid_argument("generator: the Bohr decomposition has no jump operators");
  }
  if (static_cast<Eigen::Index>(dec.jump_ops.front().size()) != bath::channels(b)) {
    throw std::invalid_argument("generator: bath has " + std::to_string(bath::channels(b)) +
                                " coupling channels but the system has " +
                                std::to_string(dec.jump_ops.front().size()));
  }
}

// e^{-i H t} built from the stored eigenbasis.
Matrix evolution_unitary(const BohrDecomposition& dec, double t) {
  Eigen::VectorXcd phases(dec.energies.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::polar(1.0, -dec.energies(k) * t);
  }
  return dec.basis * phases.asDiagonal() * dec.basis.adjoint();
}

}  // namespace

Superoperator cumulant_generator(const BohrDecomposition& dec, const rates::RateKernel& kernel,
                                 double t, rates::GammaDiagnostics* diag) {
  if (kernel.method == rates::Method::markov) {
    throw std::invalid_argument(
        "cumulant_generator: the markov kernel belongs to the Davies generators");
  }
  check_channels(dec, kernel.bath);
  const Matrix gamma = rates::assemble_gamma_matrix(kernel, dec.frequencies, t, diag);
  const auto dim = dec.basis.rows();
  return accumulate_dissipators(dim, flatten_ops(dec.jump_ops), gamma);
}

Superoperator davies_global_generator(const BohrDecomposition& dec,
                                      const rates::RateKernel& kernel) {
  check_channels(dec, kernel.bath);
  rates::RateKernel markov = kernel;
  markov.method = rates::Method::markov;
  const Matrix gamma = rates::assemble_gamma_matrix(markov, dec.frequencies, 0.0);
  const auto dim = dec.basis.rows();
  return accumulate_dissipators(dim, flatten_ops(dec.jump_ops), gamma);
}

Superoperator davies_local_generator(const SystemModel& system, const BohrDecomposition& dec,
                                     const FrequencyGrouping& grouping,
                                     const rates::RateKernel& kernel) {
  check_channels(dec, kernel.bath);
  rates::RateKernel markov = kernel;
  markov.method = rates::Method::markov;
  const Matrix gamma = rates::assemble_gamma_matrix(markov, grouping.means, 0.0);
  const auto grouped = local_jump_ops(dec, grouping);
  Superoperator total =
      accumulate_dissipators(system.hamiltonian.rows(), flatten_ops(grouped), gamma);
  total.mat += linalg::hamiltonian_super(system.hamiltonian).mat;
  return total;
}

std::string to_string(EvolutionMethod m) {
  switch (m) {
    case EvolutionMethod::exact_cutoff:
      return "exact-cutoff";
    case EvolutionMethod::star:
      return "star";
    case EvolutionMethod::doublestar:
      return "doublestar";
    case EvolutionMethod::davies_global:
      return "davies-global";
    case EvolutionMethod::davies_local:
      return "davies-local";
  }
  return "unknown";
}

std::optional<EvolutionMethod> evolution_method_from_string(const std::string& name) {
  if (name == "exact-cutoff") return EvolutionMethod::exact_cutoff;
  if (name == "star") return EvolutionMethod::star;
  if (name == "doublestar") return EvolutionMethod::doublestar;
  if (name == "davies-global") return EvolutionMethod::davies_global;
  if (name == "davies-local") return EvolutionMethod::davies_local;
  return std::nullopt;
}

PropagationResult propagate(const SystemModel& system, const PropagationOptions& options,
                            const models::DensityMatrix& rho0, const std::vector<double>& times) {
  if (times.empty()) {
    throw std::invalid_argument("propagate: need at least one time");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) {
      throw std::invalid_argument("propagate: times must be finite and >= 0");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw std::invalid_argument("propagate: times must be strictly ascending");
    }
  }
  if (rho0.rho.rows() != system.hamiltonian.rows()) {
    throw std::invalid_argument("propagate: initial state dimension does not match the system");
  }

  const BohrDecomposition dec = bohr_decompose(system);

  rates::RateKernel kernel;
  kernel.bath = options.bath;
  kernel.quadrature = options.quadrature;
  bool cumulant = false;
  switch (options.method) {
    case EvolutionMethod::exact_cutoff:
      kernel.method = rates::Method::exact_cutoff;
      cumulant = true;
      break;
    case EvolutionMethod::star:
      kernel.method = rates::Method::star;
      cumulant = true;
      break;
    case EvolutionMethod::doublestar:
      kernel.method = rates::Method::doublestar;
      cumulant = true;
      break;
    case EvolutionMethod::davies_global:
    case EvolutionMethod::davies_local:
      kernel.method = rates::Method::markov;
      break;
  }

  PropagationResult result;
  result.interaction.picture = "interaction";
  result.schrodinger.picture = "schrodinger";
  const std::string method_name = to_string(options.method);
  result.interaction.metadata["method"] = method_name;
  result.schrodinger.metadata["method"] = method_name;

  Superoperator fixed_generator;  // Davies generators are time-independent
  bool schrodinger_primary = false;
  if (options.method == EvolutionMethod::davies_global) {
    fixed_generator = davies_global_generator(dec, kernel);
  } else if (options.method == EvolutionMethod::davies_local) {
    const FrequencyGrouping grouping =
        group_frequencies(dec.frequencies, options.gap_threshold);
    result.grouping_diagnostic = grouping.diagnostic;
    fixed_generator = davies_local_generator(system, dec, grouping, kernel);
    schrodinger_primary = true;
  }

  const linalg::Vector rho0_vec = linalg::vec(rho0.rho);
  for (double t : times) {
    Matrix primary;
    if (cumulant) {
      const Superoperator k = cumulant_generator(dec, kernel, t, &result.quadrature);
      primary = linalg::unvec(linalg::matrix_exp(k.mat) * rho0_vec);
    } else {
      primary = linalg::unvec(linalg::matrix_exp(t * fixed_generator.mat) * rho0_vec);
    }

    const Matrix u = evolution_unitary(dec, t);
    Matrix rho_s, rho_i;
    if (schrodinger_primary) {
      rho_s = primary;
      rho_i = u.adjoint() * primary * u;
    } else {
      rho_i = primary;
      rho_s = u * primary * u.adjoint();
    }

    StateDiagnostics sd;
    sd.t = t;
    sd.trace_defect = std::abs(rho_s.trace() - 1.0);
    sd.hermiticity_defect = (rho_s - rho_s.adjoint()).norm();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (rho_s + rho_s.adjoint()),
                                              Eigen::EigenvaluesOnly);
    sd.min_eigenvalue = eig.eigenvalues()(0);
    result.diagnostics.push_back(sd);

    if (sd.trace_defect > options.trace_tol) {
      throw models::InvariantError("propagate: state at t=" + std::to_string(t) +
                                   " has trace defect " + sci(sd.trace_defect));
    }
    if (sd.min_eigenvalue < -options.eig_floor) {
      throw models::InvariantError("propagate: state at t=" + std::to_string(t) +
                                   " has negative eigenvalue " + sci(sd.min_eigenvalue));
    }

    result.interaction.times.push_back(t);
    result.interaction.states.push_back(std::move(rho_i));
    result.schrodinger.times.push_back(t);
    result.schrodinger.states.push_back(std::move(rho_s));
  }
  return result;
}

}  // namespace rcme::generators
