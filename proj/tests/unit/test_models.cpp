// test_models.cpp — density validation, Gibbs states, witness, observables.
#include "rcme/models.hpp"

#include <doctest.h>

#include "rcme/analysis.hpp"

#include <cmath>
#include <complex>

using namespace rcme;
using linalg::Matrix;
using models::DensityMatrix;
using models::TimeSeries;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

TimeSeries diagonal_series(const std::vector<double>& times,
                           const std::vector<double>& excited_populations) {
  TimeSeries series;
  series.times = times;
  for (double p : excited_populations) {
    series.states.push_back(diag2(p, 1.0 - p));
  }
  return series;
}

}  // namespace

TEST_CASE("make_density accepts physical states and rejects the rest") {
  CHECK_NOTHROW(models::make_density(diag2(0.3, 0.7)));

  Matrix plus = Matrix::Constant(2, 2, 0.5);
  CHECK_NOTHROW(models::make_density(plus));

  // A tiny negative eigenvalue within the floor is clamped silently.
  CHECK_NOTHROW(models::make_density(diag2(-1e-9, 1.0 + 1e-9)));

  Matrix skew = diag2(0.5, 0.5);
  skew(0, 1) = std::complex<double>(0.0, 1e-3);
  CHECK_THROWS_AS(models::make_density(skew), std::invalid_argument);

  CHECK_THROWS_AS(models::make_density(diag2(0.6, 0.6)), std::invalid_argument);
  CHECK_THROWS_AS(models::make_density(diag2(-0.2, 1.2)), std::invalid_argument);
  CHECK_THROWS_AS(models::make_density(Matrix::Zero(0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(models::make_density(Matrix::Ones(2, 3)), std::invalid_argument);
}

TEST_CASE("time series validation checks grids and pictures") {
  TimeSeries series = diagonal_series({0.0, 1.0, 2.0}, {1.0, 0.8, 0.7});
  CHECK_NOTHROW(models::validate(series));

  TimeSeries short_states = series;
  short_states.states.pop_back();
  CHECK_THROWS_AS(models::validate(short_states), std::invalid_argument);

  TimeSeries bad_picture = series;
  bad_picture.picture = "heisenberg";
  CHECK_THROWS_AS(models::validate(bad_picture), std::invalid_argument);

  TimeSeries unsorted = series;
  unsorted.times = {0.0, 2.0, 1.0};
  CHECK_THROWS_AS(models::validate(unsorted), std::invalid_argument);
}

TEST_CASE("spin-boson factory wires the qubit and bath together") {
  const auto model = models::spin_boson(0.1, 2.0, bath::SpectralKind::ohmic_exp_cutoff, 5.0);
  CHECK(model.system.hamiltonian(0, 0).real() == doctest::Approx(0.5));
  CHECK(model.system.hamiltonian(1, 1).real() == doctest::Approx(-0.5));
  REQUIRE(model.system.couplings.size() == 1);
  CHECK(std::abs(model.system.couplings[0](0, 1)) == doctest::Approx(1.0));
  CHECK(model.system.hermitian_couplings);
  CHECK(model.bath.spectral.alpha == doctest::Approx(0.1));
  CHECK(model.bath.spectral.omega_c == doctest::Approx(5.0));
  CHECK(model.bath.T_eff == doctest::Approx(2.0));
}

TEST_CASE("qutrit factory splits the upper doublet around unit frequency") {
  const auto model = models::qutrit_boson(0.01, 1.0, 0.2);
  CHECK(model.system.hamiltonian(0, 0).real() == doctest::Approx(1.1));
  CHECK(model.system.hamiltonian(1, 1).real() == doctest::Approx(0.9));
  CHECK(model.system.hamiltonian(2, 2).real() == doctest::Approx(0.0));
  REQUIRE(model.system.couplings.size() == 1);
  // Both upper levels couple to the ground state with unit weight.
  CHECK(std::abs(model.system.couplings[0](0, 2)) == doctest::Approx(1.0));
  CHECK(std::abs(model.system.couplings[0](1, 2)) == doctest::Approx(1.0));

  CHECK_THROWS_AS(models::qutrit_boson(0.01, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(models::qutrit_boson(0.01, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("gibbs_state reproduces the qubit partition function") {
  const Matrix h = diag2(0.5, -0.5);
  const Matrix rho = models::gibbs_state(h, 1.0);
  CHECK(rho(0, 0).real() == doctest::Approx(0.2689414213699951).epsilon(1e-14));
  CHECK(rho(1, 1).real() == doctest::Approx(1.0 - 0.2689414213699951).epsilon(1e-14));
  CHECK(std::abs(rho(0, 1)) <= 1e-15);
  CHECK(std::abs(rho.trace() - 1.0) <= 1e-14);
}

TEST_CASE("gibbs_state handles zero temperature and large gaps") {
  const Matrix ground = models::gibbs_state(diag2(0.5, -0.5), 0.0);
  CHECK(ground(0, 0).real() == doctest::Approx(0.0));
  CHECK(ground(1, 1).real() == doctest::Approx(1.0));

  // Degenerate ground space splits the weight evenly.
  Matrix h3 = Matrix::Zero(3, 3);
  h3(0, 0) = 1.0;
  const Matrix projector = models::gibbs_state(h3, 0.0);
  CHECK(projector(1, 1).real() == doctest::Approx(0.5));
  CHECK(projector(2, 2).real() == doctest::Approx(0.5));
  CHECK(projector(0, 0).real() == doctest::Approx(0.0));

  // A huge gap must not overflow the exponentials.
  const Matrix big = models::gibbs_state(diag2(2000.0, 0.0), 1.0);
  CHECK(std::isfinite(big(0, 0).real()));
  CHECK(big(1, 1).real() == doctest::Approx(1.0));

  CHECK_THROWS_AS(models::gibbs_state(diag2(0.5, -0.5), -1.0), std::invalid_argument);
}

TEST_CASE("gibbs_state is invariant under energy shifts") {
  const Matrix h = diag2(0.5, -0.5);
  const Matrix shifted = h + 7.0 * Matrix::Identity(2, 2);
  CHECK((models::gibbs_state(h, 0.7) - models::gibbs_state(shifted, 0.7)).norm() <= 1e-13);
}

TEST_CASE("trace_distance matches hand-evaluated cases") {
  CHECK(models::trace_distance(diag2(1.0, 0.0), diag2(0.0, 1.0)) == doctest::Approx(1.0));
  CHECK(models::trace_distance(diag2(0.3, 0.7), diag2(0.3, 0.7)) == doctest::Approx(0.0));
  CHECK(models::trace_distance(diag2(0.7, 0.3), diag2(0.5, 0.5)) == doctest::Approx(0.2));

  // Symmetric, and bounded by 1 for states.
  Matrix plus = Matrix::Constant(2, 2, 0.5);
  const double d1 = models::trace_distance(plus, diag2(0.5, 0.5));
  const double d2 = models::trace_distance(diag2(0.5, 0.5), plus);
  CHECK(d1 == doctest::Approx(d2));
  CHECK(d1 == doctest::Approx(0.5));

  CHECK_THROWS_AS(models::trace_distance(plus, Matrix::Identity(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("witness accumulates every revival of the trace distance") {
  const std::vector<double> times{0.0, 1.0, 2.0, 3.0, 4.0};
  const auto a = diagonal_series(times, {1.0, 0.8, 0.9, 0.6, 0.65});
  const auto b = diagonal_series(times, {0.5, 0.5, 0.5, 0.5, 0.5});
  // Distances are |p_a - 0.5| = 0.5, 0.3, 0.4, 0.1, 0.15.
  const auto report = models::nonmarkovianity_witness(a, b);
  REQUIRE(report.distances.size() == 5);
  CHECK(report.distances[0] == doctest::Approx(0.5));
  CHECK(report.total_increase == doctest::Approx(0.15));
  CHECK_FALSE(report.monotone);
  REQUIRE(report.increase_intervals.size() == 2);
  CHECK(report.increase_intervals[0].t_start == doctest::Approx(1.0));
  CHECK(report.increase_intervals[0].t_end == doctest::Approx(2.0));
  CHECK(report.increase_intervals[0].increase == doctest::Approx(0.1));
  CHECK(report.increase_intervals[1].t_start == doctest::Approx(3.0));
  CHECK(report.increase_intervals[1].increase == doctest::Approx(0.05));
}

TEST_CASE("witness reports monotone pairs as Markov-compatible") {
  const std::vector<double> times{0.0, 1.0, 2.0};
  const auto a = diagonal_series(times, {1.0, 0.8, 0.7});
  const auto b = diagonal_series(times, {0.5, 0.5, 0.5});
  const auto report = models::nonmarkovianity_witness(a, b);
  CHECK(report.total_increase == doctest::Approx(0.0));
  CHECK(report.monotone);
  CHECK(report.increase_intervals.empty());
}

TEST_CASE("witness rejects mismatched series") {
  const auto a = diagonal_series({0.0, 1.0}, {1.0, 0.8});
  auto b = diagonal_series({0.0, 2.0}, {0.5, 0.5});
  CHECK_THROWS_AS(models::nonmarkovianity_witness(a, b), std::invalid_argument);

  auto c = diagonal_series({0.0, 1.0}, {0.5, 0.5});
  c.picture = "interaction";
  CHECK_THROWS_AS(models::nonmarkovianity_witness(a, c), std::invalid_argument);
}

TEST_CASE("observable_track extracts matrix elements along a series") {
  TimeSeries series = diagonal_series({0.0, 1.0}, {1.0, 0.8});
  series.states[1](0, 1) = std::complex<double>(0.1, -0.2);
  series.states[1](1, 0) = std::complex<double>(0.1, 0.2);

  const auto populations =
      models::observable_track(series, models::ObservableSelector{0, 0});
  REQUIRE(populations.size() == 2);
  CHECK(populations[0][0] == doctest::Approx(1.0));
  CHECK(populations[1][0] == doctest::Approx(0.8));

  const auto coherence =
      models::observable_track(series, models::ObservableSelector{0, 1});
  CHECK(coherence[1][0] == doctest::Approx(0.1));
  CHECK(coherence[1][1] == doctest::Approx(-0.2));
  CHECK(coherence[1][2] == doctest::Approx(std::hypot(0.1, 0.2)));

  CHECK_THROWS_AS(models::observable_track(series, models::ObservableSelector{2, 0}),
                  std::invalid_argument);
}
