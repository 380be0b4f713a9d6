// models.hpp — validated states, time series, and the bundled example models.
#pragma once

#include "rcme/bath.hpp"
#include "rcme/linalg.hpp"
#include "rcme/system.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcme::models {

using linalg::Matrix;

// Raised when an evolved state or series violates a physical invariant.
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A density matrix validated at construction: Hermitian within 1e-10, unit
// trace within 1e-9, smallest eigenvalue >= -1e-8.
struct DensityMatrix {
  Matrix rho;
};

DensityMatrix make_density(const Matrix& rho, double herm_tol = 1e-10, double trace_tol = 1e-9,
                           double eig_floor = 1e-8);

// States sampled on a strictly ascending time grid in a fixed picture
// ("schrodinger" or "interaction").
struct TimeSeries {
  std::vector<double> times;
  std::vector<Matrix> states;
  std::string picture{"schrodinger"};
  std::map<std::string, std::string> metadata;
};

void validate(const TimeSeries& series);

struct Model {
  generators::SystemModel system;
  bath::BathModel bath;
};

// Two-level system at splitting 1 (basis |e>, |g>), coupled through sigma_x.
Model spin_boson(double alpha, double T_eff, bath::SpectralKind kind, double omega_c);

// Three-level V system: two upper levels split by delta_omega around 1
// (basis |w2>, |w1>, |g>), both coupled to the ground state with unit weight,
// plain ohmic bath. Requires 0 < delta_omega < 2.
Model qutrit_boson(double alpha, double T_eff, double delta_omega);

// exp(-H/T) / Z, evaluated from the shifted spectrum so large gaps cannot
// overflow; T = 0 returns the normalised ground-space projector.
Matrix gibbs_state(const Matrix& hamiltonian, double T_eff);

}  // namespace rcme::models
