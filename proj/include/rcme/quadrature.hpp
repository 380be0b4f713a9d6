// quadrature.hpp — adaptive panel integration with a Gauss-Kronrod 7-15 rule.
#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <vector>

namespace rcme::quad {

struct QuadratureConfig {
  double rel_tol{1e-8};
  double abs_tol{1e-12};
  int max_subdivisions{2000};
  double tail_epsilon{1e-12};
};

void validate(const QuadratureConfig& cfg);

// Raised when an integral cannot reach the requested tolerance within the
// subdivision budget; carries the diagnostics of the failing attempt.
struct QuadratureError : std::runtime_error {
  double achieved_error{0.0};
  double worst_a{0.0};
  double worst_b{0.0};
  QuadratureError(const std::string& what, double err, double a, double b)
      : std::runtime_error(what), achieved_error(err), worst_a(a), worst_b(b) {}
};

struct IntegralResult {
  Eigen::VectorXd value;
  double error{0.0};
  bool converged{false};
  double worst_a{0.0};
  double worst_b{0.0};
  long evaluations{0};
  long panels{0};
};

// Writes the n_components values of f(x) into the preallocated output vector.
using VectorFn = std::function<void(double, Eigen::VectorXd&)>;

// Integrates f over the panels defined by consecutive edges (ascending, at
// least two). Panels are refined adaptively, worst first, until the summed
// error estimate drops below max(abs_tol, rel_tol * max |component|) or the
// subdivision budget is exhausted (converged = false in that case; the caller
// decides whether to throw).
IntegralResult integrate(const VectorFn& f, int n_components,
                         const std::vector<double>& edges, const QuadratureConfig& cfg);

double integrate_scalar(const std::function<double(double)>& f, const std::vector<double>& edges,
                        const QuadratureConfig& cfg);

// sin(x)/x with a series branch near zero.
double sinc(double x);

// Ascending panel edges for [a, b]: the points c + 2 pi k / t for every centre
// c (clipped to the interval), plus extra breakpoints, with long gaps split to
// the width cap. Lattices are thinned when they would exceed max_edges.
std::vector<double> sinc_aligned_edges(double a, double b, double t,
                                       const std::vector<double>& centres,
                                       const std::vector<double>& extra, double width_cap,
                                       std::size_t max_edges = 400000);

}  // namespace rcme::quad
