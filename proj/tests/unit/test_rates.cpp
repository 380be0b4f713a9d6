// test_rates.cpp — finite-time rate functions against reference integrals.
#include "rcme/rates.hpp"

#include <doctest.h>

#include "oracles.hpp"

#include <cmath>
#include <complex>

using namespace rcme;
using linalg::Complex;
using linalg::Matrix;

namespace {

rates::RateKernel kernel_for(rates::Method method, bath::SpectralKind kind, double alpha,
                             double omega_c, double T_eff) {
  rates::RateKernel kernel;
  kernel.method = method;
  kernel.bath = bath::make_bath(kind, alpha, omega_c, T_eff);
  return kernel;
}

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

}  // namespace

TEST_CASE("closed-form correlation function agrees with brute-force quadrature") {
  for (double T : {0.0, 1.0}) {
    const auto b = bath::make_bath(bath::SpectralKind::ohmic_exp_cutoff, 0.1, 5.0, T);
    for (double x : {0.0, 0.3, 2.0}) {
      const Complex closed = testing::correlation_exp_cutoff(b, x);
      const Complex brute = testing::correlation_by_quadrature(b, x);
      CHECK(std::abs(closed - brute) <= 1e-10 * std::max(1.0, std::abs(closed)));
    }
  }
}

TEST_CASE("exact-cutoff rates match the double time-domain integral") {
  const auto kernel = kernel_for(rates::Method::exact_cutoff,
                                 bath::SpectralKind::ohmic_exp_cutoff, 0.1, 5.0, 1.0);
  for (double t : {0.5, 2.0}) {
    for (const auto& [w, wp] : {std::pair{1.0, 1.0}, std::pair{-1.0, 1.0},
                                std::pair{1.0, -1.0}, std::pair{-1.0, -1.0}}) {
      const Complex prod = rates::gamma_exact_cutoff(kernel, w, wp, t);
      const Complex ref = testing::gamma_time_domain(kernel.bath, w, wp, t);
      CAPTURE(t);
      CAPTURE(w);
      CAPTURE(wp);
      CHECK(std::abs(prod - ref) <= 1e-6);
    }
  }
}

TEST_CASE("exact-cutoff rates match the time-domain integral at zero temperature") {
  const auto kernel = kernel_for(rates::Method::exact_cutoff,
                                 bath::SpectralKind::ohmic_exp_cutoff, 0.1, 5.0, 0.0);
  const Complex prod = rates::gamma_exact_cutoff(kernel, 1.0, 1.0, 2.0);
  const Complex ref = testing::gamma_time_domain(kernel.bath, 1.0, 1.0, 2.0);
  CHECK(std::abs(prod - ref) <= 1e-6);
}

TEST_CASE("doublestar keeps the occupation integral exact") {
  // The vacuum part vanishes whenever one frequency is negative, and equals
  // 2 pi t J(w) on the positive diagonal; subtract it and compare against the
  // thermal-only time-domain integral.
  const auto kernel =
      kernel_for(rates::Method::doublestar, bath::SpectralKind::ohmic, 0.1, 0.0, 1.0);
  const double t = 2.0;
  for (const auto& [w, wp] : {std::pair{-1.0, -1.0}, std::pair{-1.0, 1.0},
                              std::pair{1.0, 1.0}}) {
    Complex vacuum = 0.0;
    if (w > 0.0 && wp > 0.0) {
      vacuum = 2.0 * M_PI * t * bath::spectral_J(kernel.bath.spectral, w);
    }
    const Complex thermal = rates::gamma_doublestar(kernel, w, wp, t) - vacuum;
    const Complex ref = testing::gamma_time_domain(kernel.bath, w, wp, t, true);
    CAPTURE(w);
    CAPTURE(wp);
    CHECK(std::abs(thermal - ref) <= 1e-6);
  }
}

TEST_CASE("star diagonal is exactly 2 pi t R(w)") {
  const auto kernel = kernel_for(rates::Method::star, bath::SpectralKind::ohmic, 0.05, 0.0, 1.0);
  for (double w : {-2.0, -1.0, 0.5, 1.0, 3.0}) {
    for (double t : {0.1, 1.0, 10.0, 500.0}) {
      const Complex g = rates::gamma_star(kernel, w, w, t);
      const double expected = 2.0 * M_PI * t * bath::rate_r(kernel.bath, w);
      CHECK(std::abs(g.imag()) <= 1e-12 * std::max(1.0, expected));
      CHECK(g.real() == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("star magnitude is the Cauchy-Schwarz envelope times a sinc") {
  const auto kernel = kernel_for(rates::Method::star, bath::SpectralKind::ohmic, 0.05, 0.0, 1.0);
  const double t = 3.0;
  const double w = -1.0;
  const double wp = 1.0;
  const Complex g = rates::gamma_star(kernel, w, wp, t);
  const double envelope = 2.0 * M_PI * t *
                          std::sqrt(bath::rate_r(kernel.bath, w) * bath::rate_r(kernel.bath, wp));
  CHECK(std::abs(g) <= envelope * (1.0 + 1e-12));
  CHECK(std::abs(g) ==
        doctest::Approx(envelope * std::abs(quad::sinc(0.5 * (wp - w) * t))).epsilon(1e-12));
  // The phase carries exp(i (wp - w) t / 2).
  const double delta = (wp - w) * t / 2.0;
  const Complex expected_phase = std::polar(1.0, delta) * quad::sinc(delta);
  CHECK(std::abs(g / envelope - expected_phase) <= 1e-12);
}

TEST_CASE("doublestar vacuum reduces to 2 pi t J on the positive diagonal at T = 0") {
  const auto kernel =
      kernel_for(rates::Method::doublestar, bath::SpectralKind::ohmic, 0.05, 0.0, 0.0);
  const double t = 4.0;
  const Complex g = rates::gamma_doublestar(kernel, 1.0, 1.0, t);
  CHECK(g.real() == doctest::Approx(2.0 * M_PI * t * 0.05).epsilon(1e-12));
  CHECK(std::abs(g.imag()) <= 1e-12);
  // Negative frequencies see neither vacuum nor occupation at T = 0.
  CHECK(std::abs(rates::gamma_doublestar(kernel, -1.0, -1.0, t)) <= 1e-14);
}

TEST_CASE("finite-time rates approach the Davies limit 2 pi R per unit time") {
  SUBCASE("sharp cutoff, zero temperature") {
    const auto kernel = kernel_for(rates::Method::exact_cutoff,
                                   bath::SpectralKind::ohmic_sharp_cutoff, 0.05, 5.0, 0.0);
    const double t = 200.0;
    const Complex g = rates::gamma_exact_cutoff(kernel, 1.0, 1.0, t);
    CHECK(g.real() / t == doctest::Approx(2.0 * M_PI * 0.05).epsilon(2e-2));
  }
  SUBCASE("exponential cutoff, zero temperature") {
    const auto kernel = kernel_for(rates::Method::exact_cutoff,
                                   bath::SpectralKind::ohmic_exp_cutoff, 0.05, 5.0, 0.0);
    const double t = 200.0;
    const Complex g = rates::gamma_exact_cutoff(kernel, 1.0, 1.0, t);
    CHECK(g.real() / t ==
          doctest::Approx(2.0 * M_PI * 0.05 * std::exp(-0.2)).epsilon(2e-2));
  }
  SUBCASE("doublestar at T = 1 reaches the frozen Davies rate") {
    const auto kernel =
        kernel_for(rates::Method::doublestar, bath::SpectralKind::ohmic, 0.05, 0.0, 1.0);
    const double t = 500.0;
    const Complex g = rates::gamma_doublestar(kernel, 1.0, 1.0, t);
    CHECK(g.real() / t == doctest::Approx(0.4969926400450850).epsilon(2e-3));
    CHECK(rates::gamma_markov(kernel, 1.0) == doctest::Approx(0.4969926400450850).epsilon(1e-12));
  }
}

TEST_CASE("off-diagonal rates obey the swap relation") {
  const double t = 1.7;
  const double w = -1.0;
  const double wp = 1.0;
  const Complex swap_phase = std::polar(1.0, (w - wp) * t);

  const auto star = kernel_for(rates::Method::star, bath::SpectralKind::ohmic, 0.1, 0.0, 1.0);
  CHECK(std::abs(rates::gamma_star(star, wp, w, t) -
                 swap_phase * rates::gamma_star(star, w, wp, t)) <= 1e-12);

  const auto dstar =
      kernel_for(rates::Method::doublestar, bath::SpectralKind::ohmic, 0.1, 0.0, 1.0);
  const Complex d1 = rates::gamma_doublestar(dstar, w, wp, t);
  CHECK(std::abs(rates::gamma_doublestar(dstar, wp, w, t) - swap_phase * d1) <=
        1e-9 * std::max(1.0, std::abs(d1)));

  const auto exact = kernel_for(rates::Method::exact_cutoff,
                                bath::SpectralKind::ohmic_exp_cutoff, 0.1, 5.0, 1.0);
  const Complex e1 = rates::gamma_exact_cutoff(exact, w, wp, t);
  CHECK(std::abs(rates::gamma_exact_cutoff(exact, wp, w, t) - swap_phase * e1) <=
        1e-9 * std::max(1.0, std::abs(e1)));
  // Hermiticity of the two-frequency matrix in scalar form.
  CHECK(std::abs(rates::gamma_exact_cutoff(exact, wp, w, t) - std::conj(e1)) <=
        1e-9 * std::max(1.0, std::abs(e1)));
}

TEST_CASE("assembled rate matrices are Hermitian positive semidefinite") {
  const std::vector<double> spin_freqs{-1.0, 1.0};
  const std::vector<double> qutrit_freqs{-1.1, -0.9, 0.9, 1.1};
  for (double t : {0.1, 1.0, 10.0, 100.0}) {
    for (auto method : {rates::Method::star, rates::Method::doublestar}) {
      const auto kernel = kernel_for(method, bath::SpectralKind::ohmic, 0.1, 0.0, 1.0);
      for (const auto& freqs : {spin_freqs, qutrit_freqs}) {
        const Matrix gamma = rates::assemble_gamma_matrix(kernel, freqs, t);
        CAPTURE(t);
        CAPTURE(rates::to_string(method));
        CHECK((gamma - gamma.adjoint()).norm() <= 1e-10 * std::max(1.0, gamma.norm()));
        CHECK(min_eigenvalue(gamma) >= -1e-10 * std::max(1.0, gamma.norm()));
      }
    }
    const auto exact = kernel_for(rates::Method::exact_cutoff,
                                  bath::SpectralKind::ohmic_exp_cutoff, 0.1, 5.0, 1.0);
    const Matrix gamma = rates::assemble_gamma_matrix(exact, spin_freqs, t);
    CHECK((gamma - gamma.adjoint()).norm() <= 1e-10 * std::max(1.0, gamma.norm()));
    CHECK(min_eigenvalue(gamma) >= -1e-10 * std::max(1.0, gamma.norm()));
  }
}

TEST_CASE("multi-channel assembly pairs the weight matrix with each frequency block") {
  auto kernel = kernel_for(rates::Method::markov, bath::SpectralKind::ohmic, 0.05, 0.0, 1.0);
  kernel.bath.coupling_weights = Eigen::MatrixXcd::Identity(2, 2);
  kernel.bath.coupling_weights(0, 1) = Complex(0.25, 0.1);
  kernel.bath.coupling_weights(1, 0) = Complex(0.25, -0.1);

  const std::vector<double> freqs{-1.0, 1.0};
  const Matrix gamma = rates::assemble_gamma_matrix(kernel, freqs, 0.0);
  REQUIRE(gamma.rows() == 4);
  for (int f = 0; f < 2; ++f) {
    const double r = 2.0 * M_PI * bath::rate_r(kernel.bath, freqs[static_cast<std::size_t>(f)]);
    // Block (f, f) is r * W^T; channel pairing (i, j) reads W(j, i).
    CHECK(std::abs(gamma(2 * f + 0, 2 * f + 1) -
                   r * kernel.bath.coupling_weights(1, 0)) <= 1e-14);
    CHECK(std::abs(gamma(2 * f + 1, 2 * f + 0) -
                   r * kernel.bath.coupling_weights(0, 1)) <= 1e-14);
  }
  // Off-frequency blocks vanish for the Davies rates.
  CHECK(gamma.block(0, 2, 2, 2).norm() == 0.0);

  // The finite-time families stay PSD with multi-channel weights.
  kernel.method = rates::Method::doublestar;
  const Matrix finite = rates::assemble_gamma_matrix(kernel, freqs, 2.0);
  CHECK(min_eigenvalue(finite) >= -1e-10 * std::max(1.0, finite.norm()));
}

TEST_CASE("rates vanish at t = 0 and for vanishing coupling") {
  const auto star = kernel_for(rates::Method::star, bath::SpectralKind::ohmic, 0.1, 0.0, 1.0);
  CHECK(rates::assemble_gamma_matrix(star, {-1.0, 1.0}, 0.0).norm() == 0.0);
  const auto off = kernel_for(rates::Method::doublestar, bath::SpectralKind::ohmic, 0.0, 0.0, 1.0);
  CHECK(rates::assemble_gamma_matrix(off, {-1.0, 1.0}, 5.0).norm() == 0.0);
}

TEST_CASE("exact-cutoff rejects the plain ohmic bath") {
  const auto kernel =
      kernel_for(rates::Method::exact_cutoff, bath::SpectralKind::ohmic, 0.1, 0.0, 1.0);
  CHECK_THROWS_AS(rates::assemble_gamma_matrix(kernel, {1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("an exhausted refinement budget raises a quadrature error") {
  // An extreme temperature stretches the thermal domain so far that the
  // aligned lattice is thinned well below the sinc oscillation scale; a
  // budget of one subdivision cannot recover that.
  auto kernel = kernel_for(rates::Method::doublestar, bath::SpectralKind::ohmic, 0.1, 0.0, 1e5);
  kernel.quadrature.max_subdivisions = 1;
  try {
    rates::assemble_gamma_matrix(kernel, {-1.0, 1.0}, 5.0);
    FAIL("expected a QuadratureError");
  } catch (const quad::QuadratureError& e) {
    CHECK(e.achieved_error > 0.0);
    CHECK(e.worst_b > e.worst_a);
  }
}

TEST_CASE("diagnostics accumulate the quadrature effort") {
  const auto kernel = kernel_for(rates::Method::exact_cutoff,
                                 bath::SpectralKind::ohmic_exp_cutoff, 0.1, 5.0, 1.0);
  rates::GammaDiagnostics diag;
  (void)rates::assemble_gamma_matrix(kernel, {-1.0, 1.0}, 2.0, &diag);
  CHECK(diag.evaluations > 0);
  CHECK(diag.panels > 0);
  CHECK(diag.omega_hi > diag.omega_lo);
  CHECK(diag.tail_bound <= 1e-10);
  const long first = diag.evaluations;
  (void)rates::assemble_gamma_matrix(kernel, {-1.0, 1.0}, 2.0, &diag);
  CHECK(diag.evaluations == 2 * first);
}

TEST_CASE("scalar wrappers require a scalar bath") {
  auto kernel = kernel_for(rates::Method::star, bath::SpectralKind::ohmic, 0.1, 0.0, 1.0);
  kernel.bath.coupling_weights = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(rates::gamma_star(kernel, 1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(rates::gamma_markov(kernel, 1.0), std::invalid_argument);
}

TEST_CASE("diagonal entries agree between scalar and grid assembly") {
  const auto kernel = kernel_for(rates::Method::exact_cutoff,
                                 bath::SpectralKind::ohmic_exp_cutoff, 0.1, 5.0, 1.0);
  const double t = 2.0;
  const Complex alone = rates::gamma_exact_cutoff(kernel, 1.0, 1.0, t);
  const Matrix grid = rates::assemble_gamma_matrix(kernel, {-1.0, 1.0}, t);
  CHECK(std::abs(grid(1, 1) - alone) <= 1e-7 * std::max(1.0, std::abs(alone)));
}
