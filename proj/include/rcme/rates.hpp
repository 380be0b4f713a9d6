// rates.hpp — finite-time and Markovian two-point rate functions.
#pragma once

#include "rcme/bath.hpp"
#include "rcme/linalg.hpp"
#include "rcme/quadrature.hpp"

#include <vector>

namespace rcme::rates {

using linalg::Complex;
using linalg::Matrix;

// exact_cutoff : frequency-domain integral of the full rate function against
//                the product of two finite-time sinc kernels; requires a bath
//                with a cutoff (the plain ohmic integral diverges).
// star         : cutoff-free closed form built from the rate function at the
//                two frequencies only.
// doublestar   : cutoff-free form keeping the occupation-weighted integral
//                exact and regularising only the vacuum part.
// markov       : long-time limit 2 pi R(w), the Davies rate.
enum class Method { exact_cutoff, star, doublestar, markov };

std::string to_string(Method m);

struct RateKernel {
  Method method{Method::star};
  bath::BathModel bath{};
  quad::QuadratureConfig quadrature{};
};

struct GammaDiagnostics {
  long evaluations{0};
  long panels{0};
  double worst_error{0.0};
  double tail_bound{0.0};
  double omega_lo{0.0};
  double omega_hi{0.0};
};

// Dense matrix of gamma_ij(w, w', t) over the composite index a = f * m + i
// (frequency-major, m coupling channels); Hermitian and positive semidefinite
// up to quadrature error. For the markov method the result is the
// t-independent matrix of Davies rates, block-diagonal in frequency.
Matrix assemble_gamma_matrix(const RateKernel& kernel, const std::vector<double>& omegas,
                             double t, GammaDiagnostics* diag = nullptr);

// Scalar-bath entries gamma(w, w', t); reject multi-channel baths.
Complex gamma_exact_cutoff(const RateKernel& kernel, double w, double wp, double t,
                           GammaDiagnostics* diag = nullptr);
Complex gamma_star(const RateKernel& kernel, double w, double wp, double t);
Complex gamma_doublestar(const RateKernel& kernel, double w, double wp, double t,
                         GammaDiagnostics* diag = nullptr);
double gamma_markov(const RateKernel& kernel, double w);

}  // namespace rcme::rates
