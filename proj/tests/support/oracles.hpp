// oracles.hpp — slow reference implementations used only by the test suites.
#pragma once

#include "rcme/bath.hpp"
#include "rcme/linalg.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace rcme::testing {

using linalg::Complex;
using linalg::Matrix;

// Plain truncated Taylor series for exp(m); accurate to ~1e-12 for ||m|| <= 5
// with the default term count.
inline Matrix taylor_exp(const Matrix& m, int terms = 60) {
  Matrix sum = Matrix::Identity(m.rows(), m.cols());
  Matrix term = Matrix::Identity(m.rows(), m.cols());
  for (int k = 1; k <= terms; ++k) {
    term = (term * m) / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

inline Matrix random_matrix(Eigen::Index d, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      m(i, j) = Complex(dist(gen), dist(gen));
    }
  }
  return m;
}

inline Matrix random_hermitian(Eigen::Index d, unsigned seed) {
  Matrix m = random_matrix(d, seed);
  return 0.5 * (m + m.adjoint());
}

inline Matrix random_density(Eigen::Index d, unsigned seed) {
  Matrix g = random_matrix(d, seed);
  Matrix rho = g * g.adjoint();
  return rho / rho.trace();
}

// Reference bath correlation function C(x) = int dW R(W) exp(-i W x) evaluated
// by direct quadrature of the rate function; used to cross-check the closed
// forms below at a few points.
Complex correlation_by_quadrature(const bath::BathModel& b, double x);

// Closed-form correlation function for the exponential-cutoff ohmic bath,
// C(x) = alpha * omega_c^2 / (1 + i omega_c x)^2 + thermal part via the
// trigamma function; exact for kind == ohmic_exp_cutoff.
Complex correlation_exp_cutoff(const bath::BathModel& b, double x);

// Thermal-only part of the correlation function (the occupation-weighted
// piece), int_0^inf dW J(W) N(T, W) * 2 cos(W x).
double correlation_thermal(const bath::BathModel& b, double x);

// Brute-force double time integral
//   gamma(w, wp, t) = int_0^t ds int_0^t du exp(i wp s - i w u) C(s - u)
// evaluated with tensor-product Gauss-Legendre panels over a tabulated
// correlation function. `thermal_only` restricts C to its occupation-weighted
// part.
Complex gamma_time_domain(const bath::BathModel& b, double w, double wp, double t,
                          bool thermal_only = false, double panel_width = 0.05);

}  // namespace rcme::testing
