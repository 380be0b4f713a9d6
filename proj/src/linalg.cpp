// linalg.cpp — dense complex linear algebra and quantum-map checks.
#include "rcme/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <sstream>
#include <stdexcept>

namespace rcme::linalg {

namespace {

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square and non-empty");
  }
}

}  // namespace

Vector vec(const Matrix& x) {
  require_square(x, "vec");
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvec(const Vector& v) {
  const auto n = v.size();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(n))));
  if (d * d != n) {
    throw std::invalid_argument("unvec: length " + std::to_string(n) + " is not a perfect square");
  }
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

EigResult hermitian_eig(const Matrix& m, double tol) {
  require_square(m, "hermitian_eig");
  const double defect = (m - m.adjoint()).norm();
  if (defect > tol * std::max(1.0, m.norm())) {
    throw std::invalid_argument("hermitian_eig: input is not Hermitian (defect " + sci(defect) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  }
  return EigResult{solver.eigenvalues(), solver.eigenvectors()};
}

Matrix psd_sqrt(const Matrix& m, double floor) {
  EigResult eig = hermitian_eig(m);
  const double min_eig = eig.values(0);
  if (min_eig < -floor) {
    throw std::invalid_argument("psd_sqrt: matrix is not positive semidefinite (min eigenvalue " +
                                sci(min_eig) + ")");
  }
  RealVector roots = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

Matrix matrix_exp(const Matrix& m) {
  require_square(m, "matrix_exp");
  return m.exp();
}

Superoperator identity_super(Eigen::Index dim) {
  return Superoperator{dim, Matrix::Identity(dim * dim, dim * dim)};
}

Superoperator dissipator_super(const Matrix& a, const Matrix& b) {
  require_square(a, "dissipator_super");
  if (b.rows() != a.rows() || b.cols() != a.cols()) {
    throw std::invalid_argument("dissipator_super: operator dimensions differ");
  }
  const auto d = a.rows();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix ba = b.adjoint() * a;
  Matrix mat = kron(b.conjugate(), a) - 0.5 * kron(id, ba) - 0.5 * kron(ba.transpose(), id);
  return Superoperator{d, std::move(mat)};
}

Superoperator hamiltonian_super(const Matrix& h) {
  require_square(h, "hamiltonian_super");
  const auto d = h.rows();
  const Matrix id = Matrix::Identity(d, d);
  const Complex mi(0.0, -1.0);
  Matrix mat = mi * (kron(id, h) - kron(h.transpose(), id));
  return Superoperator{d, std::move(mat)};
}

Matrix apply(const Superoperator& s, const Matrix& rho) {
  if (rho.rows() != s.dim || rho.cols() != s.dim) {
    throw std::invalid_argument("apply: state dimension does not match superoperator");
  }
  return unvec(s.mat * vec(rho));
}

Superoperator exp_super(const Superoperator& s) {
  return Superoperator{s.dim, matrix_exp(s.mat)};
}

ChoiMatrix choi_of(const Superoperator& s) {
  const auto d = s.dim;
  if (s.mat.rows() != d * d || s.mat.cols() != d * d) {
    throw std::invalid_argument("choi_of: superoperator matrix is not d^2 x d^2");
  }
  Matrix choi = Matrix::Zero(d * d, d * d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index l = 0; l < d; ++l) {
      const Matrix mapped = unvec(s.mat.col(l * d + k));
      Matrix unit = Matrix::Zero(d, d);
      unit(k, l) = 1.0;
      choi += kron(mapped, unit);
    }
  }
  return ChoiMatrix{d, std::move(choi)};
}

CptpReport is_cptp(const Superoperator& s, double tol) {
  if (tol <= 0.0) {
    throw std::invalid_argument("is_cptp: tolerance must be positive");
  }
  const ChoiMatrix choi = choi_of(s);
  const auto d = s.dim;

  CptpReport report;
  report.hermiticity_defect = (choi.mat - choi.mat.adjoint()).norm();

  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (choi.mat + choi.mat.adjoint()),
                                               Eigen::EigenvaluesOnly);
  report.min_choi_eigenvalue = solver.eigenvalues()(0);

  Matrix traced = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    traced += choi.mat.block(i * d, i * d, d, d);
  }
  report.trace_defect = (traced - Matrix::Identity(d, d)).norm();

  report.cptp = report.hermiticity_defect <= tol && report.min_choi_eigenvalue >= -tol &&
                report.trace_defect <= tol;
  return report;
}

}  // namespace rcme::linalg
