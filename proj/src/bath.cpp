// bath.cpp — ohmic spectral densities and thermal reservoir rate functions.
#include "rcme/bath.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace rcme::bath {

std::string to_string(SpectralKind kind) {
  switch (kind) {
    case SpectralKind::ohmic:
      return "ohmic";
    case SpectralKind::ohmic_exp_cutoff:
      return "ohmic-exponential-cutoff";
    case SpectralKind::ohmic_sharp_cutoff:
      return "ohmic-sharp-cutoff";
  }
  return "unknown";
}

bool has_cutoff(const SpectralDensity& sd) {
  return sd.kind != SpectralKind::ohmic;
}

void validate(const BathModel& b) {
  if (b.spectral.alpha < 0.0 || !std::isfinite(b.spectral.alpha)) {
    throw std::invalid_argument("bath: coupling strength alpha must be finite and >= 0");
  }
  if (has_cutoff(b.spectral) && !(b.spectral.omega_c > 0.0)) {
    throw std::invalid_argument("bath: cutoff frequency omega_c must be > 0 for " +
                                to_string(b.spectral.kind));
  }
  if (b.T_eff < 0.0 || !std::isfinite(b.T_eff)) {
    throw std::invalid_argument("bath: effective temperature must be finite and >= 0");
  }
  const auto& w = b.coupling_weights;
  if (w.rows() != w.cols() || w.rows() == 0) {
    throw std::invalid_argument("bath: coupling weight matrix must be square and non-empty");
  }
  if ((w - w.adjoint()).norm() > 1e-12 * std::max(1.0, w.norm())) {
    throw std::invalid_argument("bath: coupling weight matrix must be Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (w + w.adjoint()),
                                                         Eigen::EigenvaluesOnly);
  if (solver.eigenvalues()(0) < -1e-12 * std::max(1.0, w.norm())) {
    throw std::invalid_argument("bath: coupling weight matrix must be positive semidefinite");
  }
}

BathModel make_bath(SpectralKind kind, double alpha, double omega_c, double T_eff) {
  BathModel b;
  b.spectral = SpectralDensity{kind, alpha, omega_c};
  b.T_eff = T_eff;
  validate(b);
  return b;
}

double spectral_J(const SpectralDensity& sd, double omega) {
  if (omega < 0.0) {
    throw std::invalid_argument("spectral_J: frequency must be >= 0");
  }
  switch (sd.kind) {
    case SpectralKind::ohmic:
      return sd.alpha * omega;
    case SpectralKind::ohmic_exp_cutoff:
      return sd.alpha * omega * std::exp(-omega / sd.omega_c);
    case SpectralKind::ohmic_sharp_cutoff:
      return omega <= sd.omega_c ? sd.alpha * omega : 0.0;
  }
  return 0.0;
}

double occupation(double T_eff, double omega) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("occupation: frequency must be > 0");
  }
  if (T_eff < 0.0) {
    throw std::invalid_argument("occupation: temperature must be >= 0");
  }
  if (T_eff == 0.0) {
    return 0.0;
  }
  return 1.0 / std::expm1(omega / T_eff);
}

double temperature_at(const BathModel& b, double omega) {
  return b.local_temperature ? b.local_temperature(std::abs(omega)) : b.T_eff;
}

double rate_r(const BathModel& b, double omega) {
  const double temp = temperature_at(b, omega);
  if (omega > 0.0) {
    // N + 1 = -1 / expm1(-w/T), smooth through w -> 0.
    const double stimulated = temp == 0.0 ? 1.0 : -1.0 / std::expm1(-omega / temp);
    return spectral_J(b.spectral, omega) * stimulated;
  }
  if (omega < 0.0) {
    if (temp == 0.0) {
      return 0.0;
    }
    return spectral_J(b.spectral, -omega) / std::expm1(-omega / temp);
  }
  return b.spectral.alpha * temp;
}

Eigen::MatrixXcd spectral_J_matrix(const BathModel& b, double omega) {
  return b.coupling_weights * spectral_J(b.spectral, omega);
}

Eigen::MatrixXcd rate_R_matrix(const BathModel& b, double omega) {
  return b.coupling_weights * rate_r(b, omega);
}

Eigen::Index channels(const BathModel& b) {
  return b.coupling_weights.rows();
}

}  // namespace rcme::bath
