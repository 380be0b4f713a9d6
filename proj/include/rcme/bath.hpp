// bath.hpp — ohmic spectral densities and thermal reservoir rate functions.
#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>

namespace rcme::bath {

// Units: hbar = k_B = 1, frequencies in units of the system frequency.
enum class SpectralKind { ohmic, ohmic_exp_cutoff, ohmic_sharp_cutoff };

std::string to_string(SpectralKind kind);

struct SpectralDensity {
  SpectralKind kind{SpectralKind::ohmic};
  double alpha{0.0};
  double omega_c{0.0};  // unused for the plain ohmic kind
};

// A reservoir profile: spectral density, effective temperature, and a
// Hermitian PSD weight matrix for multi-channel couplings. The full
// matrix-valued spectral density is J(w) = coupling_weights * spectral_J(w),
// which keeps sgn(w) J(w) positive semidefinite by construction. The optional
// local_temperature hook replaces T_eff with a frequency-dependent value
// T(|w|) inside the occupation factors.
struct BathModel {
  SpectralDensity spectral{};
  double T_eff{0.0};
  Eigen::MatrixXcd coupling_weights{Eigen::MatrixXcd::Identity(1, 1)};
  std::function<double(double)> local_temperature{};
};

bool has_cutoff(const SpectralDensity& sd);

// Throws std::invalid_argument when parameters are out of range or the weight
// matrix is not Hermitian positive semidefinite.
void validate(const BathModel& b);

BathModel make_bath(SpectralKind kind, double alpha, double omega_c, double T_eff);

// Scalar spectral density profile J(w) for w >= 0; negative w is rejected
// (callers apply the antisymmetric extension themselves).
double spectral_J(const SpectralDensity& sd, double omega);

// Bose-Einstein occupation at frequency w > 0; returns 0 at T_eff = 0.
double occupation(double T_eff, double omega);

// Scalar rate function over the full real line:
//   R(w) = J(w) (N(T, w) + 1)   for w > 0,
//   R(w) = J(-w) N(T, -w)       for w < 0,
//   R(0) = alpha * T            by continuity for the ohmic family.
// Evaluated in cancellation-free expm1 form; R(w)/R(-w) = exp(w/T) exactly.
double rate_r(const BathModel& b, double omega);

// Effective temperature at |w|, honouring the local_temperature hook.
double temperature_at(const BathModel& b, double omega);

// Matrix-valued versions, coupling_weights times the scalar profile.
Eigen::MatrixXcd spectral_J_matrix(const BathModel& b, double omega);
Eigen::MatrixXcd rate_R_matrix(const BathModel& b, double omega);

// Number of coupling channels (rows of the weight matrix).
Eigen::Index channels(const BathModel& b);

}  // namespace rcme::bath
