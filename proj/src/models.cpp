// models.cpp — validated states, time series, and the bundled example models.
#include "rcme/models.hpp"

#include <cmath>
#include <sstream>

namespace rcme::models {

namespace {

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

}  // namespace

DensityMatrix make_density(const Matrix& rho, double herm_tol, double trace_tol,
                           double eig_floor) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw std::invalid_argument("make_density: state must be square and non-empty");
  }
  const double herm = (rho - rho.adjoint()).norm();
  if (herm > herm_tol) {
    throw std::invalid_argument("make_density: state is not Hermitian (defect " + sci(herm) + ")");
  }
  const double trace_defect = std::abs(rho.trace() - 1.0);
  if (trace_defect > trace_tol) {
    throw std::invalid_argument("make_density: trace differs from 1 by " + sci(trace_defect));
  }
  const auto eig = linalg::hermitian_eig(0.5 * (rho + rho.adjoint()), 1.0);
  if (eig.values(0) < -eig_floor) {
    throw std::invalid_argument("make_density: state has negative eigenvalue " +
                                sci(eig.values(0)));
  }
  return DensityMatrix{rho};
}

void validate(const TimeSeries& series) {
  if (series.times.size() != series.states.size()) {
    throw std::invalid_argument("time series: times and states differ in length");
  }
  if (series.picture != "schrodinger" && series.picture != "interaction") {
    throw std::invalid_argument("time series: unknown picture '" + series.picture + "'");
  }
  for (std::size_t i = 0; i + 1 < series.times.size(); ++i) {
    if (!(series.times[i] < series.times[i + 1])) {
      throw std::invalid_argument("time series: times must be strictly ascending");
    }
  }
}

Model spin_boson(double alpha, double T_eff, bath::SpectralKind kind, double omega_c) {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = 0.5;
  h(1, 1) = -0.5;
  Matrix sx = Matrix::Zero(2, 2);
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;
  return Model{generators::make_system(std::move(h), {std::move(sx)}),
               bath::make_bath(kind, alpha, omega_c, T_eff)};
}

Model qutrit_boson(double alpha, double T_eff, double delta_omega) {
  if (!(delta_omega > 0.0) || !(delta_omega < 2.0)) {
    throw std::invalid_argument("qutrit_boson: delta_omega must lie in (0, 2)");
  }
  Matrix h = Matrix::Zero(3, 3);
  h(0, 0) = 1.0 + 0.5 * delta_omega;  // |w2>
  h(1, 1) = 1.0 - 0.5 * delta_omega;  // |w1>
  Matrix a = Matrix::Zero(3, 3);
  a(2, 0) = 1.0;  // |g><w2|
  a(2, 1) = 1.0;  // |g><w1|
  a(0, 2) = 1.0;
  a(1, 2) = 1.0;
  return Model{generators::make_system(std::move(h), {std::move(a)}),
               bath::make_bath(bath::SpectralKind::ohmic, alpha, 0.0, T_eff)};
}

Matrix gibbs_state(const Matrix& hamiltonian, double T_eff) {
  if (T_eff < 0.0) {
    throw std::invalid_argument("gibbs_state: temperature must be >= 0");
  }
  const auto eig = linalg::hermitian_eig(hamiltonian);
  const auto d = hamiltonian.rows();
  Eigen::VectorXd weights(d);
  if (T_eff == 0.0) {
    const double ground = eig.values(0);
    const double tol = 1e-12 * std::max(1.0, hamiltonian.norm());
    for (Eigen::Index i = 0; i < d; ++i) {
      weights(i) = eig.values(i) - ground <= tol ? 1.0 : 0.0;
    }
  } else {
    for (Eigen::Index i = 0; i < d; ++i) {
      weights(i) = std::exp(-(eig.values(i) - eig.values(0)) / T_eff);
    }
  }
  weights /= weights.sum();
  return eig.vectors * weights.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace rcme::models
