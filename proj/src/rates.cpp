// rates.cpp — finite-time and Markovian two-point rate functions.
#include "rcme/rates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rcme::rates {

namespace {

using bath::BathModel;
using quad::sinc;

// Smallest x with 2 alpha x exp(-k x) <= eps, found by doubling; used to
// truncate exponentially decaying tails of the rate function.
double decay_bound(double alpha, double k, double eps) {
  double x = std::max(1.0, 1.0 / k);
  for (int i = 0; i < 400 && 2.0 * alpha * x * std::exp(-k * x) > eps; ++i) {
    x *= 1.25;
  }
  return x;
}

// Conservative estimate of the neglected tail beyond x for an exponentially
// decaying integrand under the squared sinc envelope.
double tail_estimate(double alpha, double k, double x, double t, double omega_max) {
  const double mass = 2.0 * alpha * std::exp(-k * x) * (x / k + 1.0 / (k * k));
  const double dist = x - omega_max;
  const double envelope = dist > 0.0 ? std::min(t * t, 4.0 / (dist * dist)) : t * t;
  return mass * envelope;
}

struct Domain {
  double lo{0.0};
  double hi{0.0};
  double tail{0.0};
};

// Temperature scale used for domain truncation; the local_temperature hook is
// sampled at the system frequency so a pure hook bath still gets a finite
// window.
double temperature_scale(const BathModel& b) {
  return b.local_temperature ? std::max(b.T_eff, b.local_temperature(1.0)) : b.T_eff;
}

// Integration window for the exact-cutoff kernel: the support of the rate
// function truncated where it falls below tail_epsilon.
Domain exact_domain(const BathModel& b, double t, double omega_max, double eps) {
  const auto& sd = b.spectral;
  const double temp = temperature_scale(b);
  Domain dom;
  if (sd.kind == bath::SpectralKind::ohmic_sharp_cutoff) {
    dom.hi = sd.omega_c;
    dom.lo = temp > 0.0 ? -sd.omega_c : 0.0;
    return dom;
  }
  const double k_pos = 1.0 / sd.omega_c;
  dom.hi = decay_bound(sd.alpha, k_pos, eps);
  if (temp > 0.0) {
    const double k_neg = 1.0 / sd.omega_c + 1.0 / temp;
    dom.lo = -decay_bound(sd.alpha, k_neg, eps);
    dom.tail = tail_estimate(sd.alpha, k_pos, dom.hi, t, omega_max) +
               tail_estimate(sd.alpha, k_neg, -dom.lo, t, omega_max);
  } else {
    dom.lo = 0.0;
    dom.tail = tail_estimate(sd.alpha, k_pos, dom.hi, t, omega_max);
  }
  return dom;
}

// Integration window [0, hi] for the occupation-weighted part of the
// doublestar kernel, with N(T, hi) J(hi) below tail_epsilon.
Domain thermal_domain(const BathModel& b, double t, double omega_max, double eps) {
  const auto& sd = b.spectral;
  Domain dom;
  double k = 1.0 / temperature_scale(b);
  if (sd.kind == bath::SpectralKind::ohmic_exp_cutoff) {
    k += 1.0 / sd.omega_c;
  }
  dom.hi = decay_bound(sd.alpha, k, eps);
  if (sd.kind == bath::SpectralKind::ohmic_sharp_cutoff) {
    dom.hi = std::min(dom.hi, sd.omega_c);
  } else {
    dom.tail = tail_estimate(sd.alpha, k, dom.hi, t, omega_max);
  }
  return dom;
}

double panel_width_cap(const BathModel& b, double lo, double hi) {
  double cap = (hi - lo) / 8.0;
  if (b.spectral.kind == bath::SpectralKind::ohmic_exp_cutoff) {
    cap = std::min(cap, 0.5 * b.spectral.omega_c);
  }
  const double temp = temperature_scale(b);
  if (temp > 0.0) {
    cap = std::min(cap, 8.0 * temp);
  }
  return cap;
}

double abs_max(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) {
    m = std::max(m, std::abs(x));
  }
  return m;
}

// Accumulates w v v^T over the packed upper triangle.
void accumulate_outer(double weight, const Eigen::VectorXd& v, Eigen::Ref<Eigen::VectorXd> out) {
  const auto nf = v.size();
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < nf; ++f) {
    for (Eigen::Index g = f; g < nf; ++g) {
      out(k++) += weight * v(f) * v(g);
    }
  }
}

Eigen::MatrixXd unpack_symmetric(const Eigen::VectorXd& packed, Eigen::Index nf,
                                 Eigen::Index offset) {
  Eigen::MatrixXd s(nf, nf);
  Eigen::Index k = offset;
  for (Eigen::Index f = 0; f < nf; ++f) {
    for (Eigen::Index g = f; g < nf; ++g) {
      s(f, g) = packed(k);
      s(g, f) = packed(k);
      ++k;
    }
  }
  return s;
}

void merge_diag(GammaDiagnostics* diag, const quad::IntegralResult& res, const Domain& dom) {
  if (diag == nullptr) {
    return;
  }
  diag->evaluations += res.evaluations;
  diag->panels += res.panels;
  diag->worst_error = std::max(diag->worst_error, res.error);
  diag->tail_bound += dom.tail;
  diag->omega_lo = std::min(diag->omega_lo, dom.lo);
  diag->omega_hi = std::max(diag->omega_hi, dom.hi);
}

void require_converged(const quad::IntegralResult& res, const char* who) {
  if (!res.converged) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << who << ": quadrature did not converge, error " << res.error
       << " on worst interval [" << res.worst_a << ", " << res.worst_b << "]";
    throw quad::QuadratureError(os.str(), res.error, res.worst_a, res.worst_b);
  }
}

// exp(i w_f t / 2) row/column phases turning the real symmetric frequency
// blocks into the Hermitian gamma convention.
Matrix apply_half_phases(const Eigen::MatrixXd& s, const std::vector<double>& omegas, double t) {
  Eigen::VectorXcd d(s.rows());
  for (Eigen::Index f = 0; f < d.size(); ++f) {
    d(f) = std::polar(1.0, 0.5 * omegas[static_cast<std::size_t>(f)] * t);
  }
  return d.conjugate().asDiagonal() * s.cast<Complex>() * d.asDiagonal();
}

double heaviside(double x) {
  if (x > 0.0) {
    return 1.0;
  }
  return x == 0.0 ? 0.5 : 0.0;
}

// Frequency-block matrix of the exact-cutoff kernel, entries
// exp(i (w' - w) t / 2) int dW R(W) [t sinc((w - W) t / 2)] [t sinc((w' - W) t / 2)].
Matrix exact_freq_matrix(const RateKernel& kernel, const std::vector<double>& omegas, double t,
                         GammaDiagnostics* diag) {
  const auto nf = static_cast<Eigen::Index>(omegas.size());
  const auto& b = kernel.bath;
  const Domain dom = exact_domain(b, t, abs_max(omegas), kernel.quadrature.tail_epsilon);
  if (!(dom.hi > dom.lo)) {
    return Matrix::Zero(nf, nf);
  }

  const std::vector<double> extra{0.0, b.spectral.omega_c, -b.spectral.omega_c};
  const auto edges = quad::sinc_aligned_edges(dom.lo, dom.hi, t, omegas, extra,
                                              panel_width_cap(b, dom.lo, dom.hi));

  const int n_comp = static_cast<int>(nf * (nf + 1) / 2);
  Eigen::VectorXd v(nf);
  quad::VectorFn fn = [&](double w, Eigen::VectorXd& out) {
    out.setZero();
    for (Eigen::Index f = 0; f < nf; ++f) {
      v(f) = t * sinc(0.5 * (omegas[static_cast<std::size_t>(f)] - w) * t);
    }
    accumulate_outer(bath::rate_r(b, w), v, out);
  };

  const auto res = quad::integrate(fn, n_comp, edges, kernel.quadrature);
  merge_diag(diag, res, dom);
  require_converged(res, "gamma_exact_cutoff");
  return apply_half_phases(unpack_symmetric(res.value, nf, 0), omegas, t);
}

struct DoublestarParts {
  Matrix occupation_minus;  // pairs channels transposed, like the vacuum part
  Matrix occupation_plus;   // pairs channels directly
  Matrix vacuum;
};

DoublestarParts doublestar_parts(const RateKernel& kernel, const std::vector<double>& omegas,
                                 double t, GammaDiagnostics* diag) {
  const auto nf = static_cast<Eigen::Index>(omegas.size());
  const auto& b = kernel.bath;
  DoublestarParts parts{Matrix::Zero(nf, nf), Matrix::Zero(nf, nf), Matrix::Zero(nf, nf)};

  if (b.T_eff > 0.0 || b.local_temperature) {
    const Domain dom = thermal_domain(b, t, abs_max(omegas), kernel.quadrature.tail_epsilon);
    std::vector<double> centres = omegas;
    for (double w : omegas) {
      centres.push_back(-w);
    }
    const std::vector<double> extra{b.spectral.omega_c};
    const auto edges = quad::sinc_aligned_edges(dom.lo, dom.hi, t, centres, extra,
                                                panel_width_cap(b, dom.lo, dom.hi));

    const int block = static_cast<int>(nf * (nf + 1) / 2);
    Eigen::VectorXd vm(nf), vp(nf);
    quad::VectorFn fn = [&](double w, Eigen::VectorXd& out) {
      out.setZero();
      const double c =
          bath::spectral_J(b.spectral, w) * bath::occupation(bath::temperature_at(b, w), w);
      for (Eigen::Index f = 0; f < nf; ++f) {
        const double omega = omegas[static_cast<std::size_t>(f)];
        vm(f) = t * sinc(0.5 * (omega - w) * t);
        vp(f) = t * sinc(0.5 * (omega + w) * t);
      }
      accumulate_outer(c, vm, out.head(block));
      accumulate_outer(c, vp, out.tail(block));
    };

    const auto res = quad::integrate(fn, 2 * block, edges, kernel.quadrature);
    merge_diag(diag, res, dom);
    require_converged(res, "gamma_doublestar");
    parts.occupation_minus = apply_half_phases(unpack_symmetric(res.value, nf, 0), omegas, t);
    parts.occupation_plus = apply_half_phases(unpack_symmetric(res.value, nf, block), omegas, t);
  }

  // Vacuum part: 2 pi t H(w) H(w') exp(i (w' - w) t / 2) sinc((w' - w) t / 2)
  // sqrt(J(w) J(w')).
  for (Eigen::Index f = 0; f < nf; ++f) {
    const double w = omegas[static_cast<std::size_t>(f)];
    const double hf = heaviside(w);
    if (hf == 0.0) {
      continue;
    }
    const double jf = bath::spectral_J(b.spectral, std::abs(w));
    for (Eigen::Index g = 0; g < nf; ++g) {
      const double wp = omegas[static_cast<std::size_t>(g)];
      const double hg = heaviside(wp);
      if (hg == 0.0) {
        continue;
      }
      const double jg = bath::spectral_J(b.spectral, std::abs(wp));
      const double delta = wp - w;
      parts.vacuum(f, g) = 2.0 * M_PI * t * hf * hg * std::sqrt(jf * jg) *
                           sinc(0.5 * delta * t) * std::polar(1.0, 0.5 * delta * t);
    }
  }
  return parts;
}

Matrix star_freq_matrix(const RateKernel& kernel, const std::vector<double>& omegas, double t) {
  const auto nf = static_cast<Eigen::Index>(omegas.size());
  const auto& b = kernel.bath;
  Matrix m(nf, nf);
  for (Eigen::Index f = 0; f < nf; ++f) {
    const double rf = bath::rate_r(b, omegas[static_cast<std::size_t>(f)]);
    for (Eigen::Index g = 0; g < nf; ++g) {
      const double rg = bath::rate_r(b, omegas[static_cast<std::size_t>(g)]);
      const double delta = omegas[static_cast<std::size_t>(g)] - omegas[static_cast<std::size_t>(f)];
      m(f, g) = 2.0 * M_PI * t * std::sqrt(rf * rg) * sinc(0.5 * delta * t) *
                std::polar(1.0, 0.5 * delta * t);
    }
  }
  return m;
}

void validate_kernel(const RateKernel& kernel) {
  bath::validate(kernel.bath);
  quad::validate(kernel.quadrature);
  if (kernel.method == Method::exact_cutoff && !bath::has_cutoff(kernel.bath.spectral)) {
    throw std::invalid_argument(
        "gamma_exact_cutoff: the frequency-domain integral diverges for the plain ohmic "
        "spectral density; use a cutoff bath or a cutoff-free method");
  }
}

void require_scalar_bath(const RateKernel& kernel, const char* who) {
  if (bath::channels(kernel.bath) != 1) {
    throw std::invalid_argument(std::string(who) + ": scalar entry requested for a bath with " +
                                std::to_string(bath::channels(kernel.bath)) +
                                " coupling channels");
  }
}

Complex scalar_entry(const RateKernel& kernel, double w, double wp, double t,
                     GammaDiagnostics* diag) {
  Matrix gamma;
  if (w == wp) {
    gamma = assemble_gamma_matrix(kernel, {w}, t, diag);
    return gamma(0, 0);
  }
  gamma = assemble_gamma_matrix(kernel, {w, wp}, t, diag);
  return gamma(0, 1);
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::exact_cutoff:
      return "exact-cutoff";
    case Method::star:
      return "star";
    case Method::doublestar:
      return "doublestar";
    case Method::markov:
      return "markov";
  }
  return "unknown";
}

Matrix assemble_gamma_matrix(const RateKernel& kernel, const std::vector<double>& omegas, double t,
                             GammaDiagnostics* diag) {
  validate_kernel(kernel);
  if (omegas.empty()) {
    throw std::invalid_argument("assemble_gamma_matrix: need at least one frequency");
  }
  for (double w : omegas) {
    if (!std::isfinite(w)) {
      throw std::invalid_argument("assemble_gamma_matrix: frequencies must be finite");
    }
  }
  if (t < 0.0) {
    throw std::invalid_argument("assemble_gamma_matrix: time must be >= 0");
  }

  const auto nf = static_cast<Eigen::Index>(omegas.size());
  const auto m = bath::channels(kernel.bath);
  const Matrix weights_t = kernel.bath.coupling_weights.transpose();

  if (kernel.method == Method::markov) {
    Matrix freq = Matrix::Zero(nf, nf);
    for (Eigen::Index f = 0; f < nf; ++f) {
      freq(f, f) = 2.0 * M_PI * bath::rate_r(kernel.bath, omegas[static_cast<std::size_t>(f)]);
    }
    return linalg::kron(freq, weights_t);
  }
  if (t == 0.0 || kernel.bath.spectral.alpha == 0.0) {
    return Matrix::Zero(nf * m, nf * m);
  }

  switch (kernel.method) {
    case Method::exact_cutoff:
      return linalg::kron(exact_freq_matrix(kernel, omegas, t, diag), weights_t);
    case Method::star:
      return linalg::kron(star_freq_matrix(kernel, omegas, t), weights_t);
    case Method::doublestar: {
      const DoublestarParts parts = doublestar_parts(kernel, omegas, t, diag);
      return linalg::kron(parts.occupation_minus + parts.vacuum, weights_t) +
             linalg::kron(parts.occupation_plus, kernel.bath.coupling_weights);
    }
    case Method::markov:
      break;
  }
  throw std::logic_error("assemble_gamma_matrix: unknown method");
}

Complex gamma_exact_cutoff(const RateKernel& kernel, double w, double wp, double t,
                           GammaDiagnostics* diag) {
  require_scalar_bath(kernel, "gamma_exact_cutoff");
  RateKernel k = kernel;
  k.method = Method::exact_cutoff;
  return scalar_entry(k, w, wp, t, diag);
}

Complex gamma_star(const RateKernel& kernel, double w, double wp, double t) {
  require_scalar_bath(kernel, "gamma_star");
  RateKernel k = kernel;
  k.method = Method::star;
  return scalar_entry(k, w, wp, t, nullptr);
}

Complex gamma_doublestar(const RateKernel& kernel, double w, double wp, double t,
                         GammaDiagnostics* diag) {
  require_scalar_bath(kernel, "gamma_doublestar");
  RateKernel k = kernel;
  k.method = Method::doublestar;
  return scalar_entry(k, w, wp, t, diag);
}

double gamma_markov(const RateKernel& kernel, double w) {
  validate_kernel(kernel);
  require_scalar_bath(kernel, "gamma_markov");
  return 2.0 * M_PI * bath::rate_r(kernel.bath, w) * kernel.bath.coupling_weights(0, 0).real();
}

}  // namespace rcme::rates
