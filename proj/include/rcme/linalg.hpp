// linalg.hpp — dense complex linear algebra and quantum-map checks.
#pragma once

#include <Eigen/Dense>

#include <complex>

namespace rcme::linalg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Linear map on vectorised d x d operators, stored as a d^2 x d^2 matrix.
// Vectorisation is column-stacking throughout: vec(X)(c * d + r) = X(r, c),
// so vec(A X B) = (B^T (x) A) vec(X).
struct Superoperator {
  Eigen::Index dim{0};
  Matrix mat;
};

// Choi matrix of a map on d x d operators, blocks ordered output (x) reference:
// choi = sum_{k,l} map(|k><l|) (x) |k><l|.
struct ChoiMatrix {
  Eigen::Index dim{0};
  Matrix mat;
};

struct EigResult {
  RealVector values;  // ascending
  Matrix vectors;     // unitary, columns are eigenvectors
};

struct CptpReport {
  bool cptp{false};
  double min_choi_eigenvalue{0.0};
  double trace_defect{0.0};
  double hermiticity_defect{0.0};
};

Vector vec(const Matrix& x);
Matrix unvec(const Vector& v);
Matrix kron(const Matrix& a, const Matrix& b);

// Eigendecomposition of a Hermitian matrix; rejects inputs whose Hermiticity
// defect ||m - m^dag||_F exceeds tol * max(1, ||m||_F).
EigResult hermitian_eig(const Matrix& m, double tol = 1e-12);

// Principal square root of a positive semidefinite matrix. Eigenvalues in
// [-floor, 0) are clamped to zero; anything below -floor is rejected.
Matrix psd_sqrt(const Matrix& m, double floor = 1e-10);

Matrix matrix_exp(const Matrix& m);

Superoperator identity_super(Eigen::Index dim);

// rho -> a rho b^dag - (1/2) {b^dag a, rho}; trace-annihilating for any a, b.
Superoperator dissipator_super(const Matrix& a, const Matrix& b);

// rho -> -i [h, rho].
Superoperator hamiltonian_super(const Matrix& h);

Matrix apply(const Superoperator& s, const Matrix& rho);

Superoperator exp_super(const Superoperator& s);

ChoiMatrix choi_of(const Superoperator& s);

// Complete positivity and trace preservation of the map s: verdict is true iff
// the Choi Hermiticity defect is within tol, the smallest Choi eigenvalue is
// >= -tol and the partial trace over the output factor is 1 within tol.
CptpReport is_cptp(const Superoperator& s, double tol);

}  // namespace rcme::linalg
