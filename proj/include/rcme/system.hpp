// system.hpp — system Hamiltonians, Bohr decompositions, frequency grouping.
#pragma once

#include "rcme/linalg.hpp"

#include <string>
#include <vector>

namespace rcme::generators {

using linalg::Matrix;

struct SystemModel {
  Matrix hamiltonian;
  std::vector<Matrix> couplings;
  bool hermitian_couplings{true};
};

// Validates Hermiticity of the Hamiltonian (tolerance 1e-12 relative) and
// records whether every coupling operator is Hermitian.
SystemModel make_system(Matrix hamiltonian, std::vector<Matrix> couplings);

// Jump operators A_i(w) = sum_{e' - e = w} P(e) A_i P(e'), indexed as
// jump_ops[frequency][channel]; frequencies are ascending and deduplicated,
// and frequencies whose blocks all vanish are dropped.
struct BohrDecomposition {
  std::vector<double> frequencies;
  std::vector<std::vector<Matrix>> jump_ops;
  Eigen::VectorXd energies;  // ascending eigenvalues of the Hamiltonian
  Matrix basis;              // unitary of eigenvectors, used for picture changes
};

BohrDecomposition bohr_decompose(const SystemModel& system, double tol_freq = -1.0);

// Partition of the Bohr frequencies into clusters split at gaps larger than
// gap_threshold; means are the cluster averages. delta_omega is the largest
// intra-cluster spread, delta_Omega the smallest gap between cluster means.
struct FrequencyGrouping {
  std::vector<std::vector<std::size_t>> groups;  // indices into frequencies
  std::vector<double> means;
  double delta_omega{0.0};
  double delta_Omega{0.0};
  bool well_separated{true};
  std::string diagnostic;
};

// gap_threshold <= 0 selects the automatic rule: the geometric mean of the
// two gap scales when they are separated by at least a factor of ten,
// otherwise half the smallest gap (every frequency its own cluster).
FrequencyGrouping group_frequencies(const std::vector<double>& frequencies,
                                    double gap_threshold = 0.0);

// Grouped jump operators A_i(mean_g) = sum_{w in group g} A_i(w).
std::vector<std::vector<Matrix>> local_jump_ops(const BohrDecomposition& dec,
                                                const FrequencyGrouping& grouping);

}  // namespace rcme::generators
