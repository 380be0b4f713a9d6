// generators.hpp — master-equation generators and state propagation.
#pragma once

#include "rcme/models.hpp"
#include "rcme/rates.hpp"
#include "rcme/system.hpp"

#include <optional>

namespace rcme::generators {

using linalg::Superoperator;

// Interaction-picture finite-time generator
//   K(t) rho = sum_{(i,w),(j,w')} gamma_ij(w, w', t)
//              (A_i(w) rho A_j(w')^dag - (1/2) {A_j(w')^dag A_i(w), rho});
// the kernel method selects the gamma family (markov is rejected, it has its
// own Davies generators below). Trace-annihilating by construction.
Superoperator cumulant_generator(const BohrDecomposition& dec, const rates::RateKernel& kernel,
                                 double t, rates::GammaDiagnostics* diag = nullptr);

// Interaction-picture Davies generator (dissipative part only): frequency-
// diagonal 2 pi R rates with the ungrouped jump operators.
Superoperator davies_global_generator(const BohrDecomposition& dec,
                                      const rates::RateKernel& kernel);

// Schrodinger-picture Davies generator with grouped jump operators evaluated
// at the cluster means; includes the -i[H, .] commutator.
Superoperator davies_local_generator(const SystemModel& system, const BohrDecomposition& dec,
                                     const FrequencyGrouping& grouping,
                                     const rates::RateKernel& kernel);

enum class EvolutionMethod { exact_cutoff, star, doublestar, davies_global, davies_local };

std::string to_string(EvolutionMethod m);
std::optional<EvolutionMethod> evolution_method_from_string(const std::string& name);

struct PropagationOptions {
  EvolutionMethod method{EvolutionMethod::star};
  bath::BathModel bath{};
  quad::QuadratureConfig quadrature{};
  double gap_threshold{0.0};  // davies_local only; <= 0 selects the automatic rule
  double trace_tol{1e-9};
  double eig_floor{1e-8};
};

struct StateDiagnostics {
  double t{0.0};
  double trace_defect{0.0};
  double min_eigenvalue{0.0};
  double hermiticity_defect{0.0};
};

struct PropagationResult {
  models::TimeSeries interaction;
  models::TimeSeries schrodinger;
  std::vector<StateDiagnostics> diagnostics;
  rates::GammaDiagnostics quadrature;
  std::string grouping_diagnostic;
};

// Evolves rho0 to every requested time with a fresh map per grid point (the
// finite-time generators do not form a semigroup). Times must be ascending
// and >= 0. Every output state is checked for unit trace within trace_tol and
// spectrum above -eig_floor; violations raise models::InvariantError.
PropagationResult propagate(const SystemModel& system, const PropagationOptions& options,
                            const models::DensityMatrix& rho0, const std::vector<double>& times);

}  // namespace rcme::generators
