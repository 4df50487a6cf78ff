#pragma once

// Small dense complex linear-algebra kernel. Every operator in the library
// (fidelity operator, Choi operator, Lagrange multipliers, propagators) is a
// ComplexMatrix; dimensions stay in the low thousands at most.

#include <complex>
#include <cstddef>
#include <utility>

#include <Eigen/Dense>

namespace orthoclone::matcore {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPsdClipTolerance = 1e-10;

struct EigenSystem {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns are eigenvectors
};

/// Largest absolute entry, or 0 for an empty matrix.
double max_abs(const ComplexMatrix& x);

/// max |X - X^dagger|; throws ContractViolation when X is not square.
double hermiticity_defect(const ComplexMatrix& x);

bool is_hermitian(const ComplexMatrix& x, double tol = kHermitianTolerance);

/// Eigendecomposition of a Hermitian matrix, eigenvalues in ascending order.
/// Throws ContractViolation for non-square or non-Hermitian input.
EigenSystem hermitian_eig(const ComplexMatrix& h);

/// Eigenvalues only (ascending).
RealVector hermitian_eigenvalues(const ComplexMatrix& h);

/// Principal square root of a positive semidefinite matrix. Eigenvalues in
/// [-kPsdClipTolerance, 0) are treated as zero; anything more negative raises
/// NotPsdError.
ComplexMatrix psd_sqrt(const ComplexMatrix& p);

/// Inverse of a positive definite matrix through its eigendecomposition, with
/// eigenvalues floored at `floor` first.
ComplexMatrix psd_inverse(const ComplexMatrix& p, double floor);

/// exp(X). Hermitian and anti-Hermitian inputs go through the
/// eigendecomposition; anything else uses scaling and squaring with a Taylor
/// core.
ComplexMatrix matrix_exp(const ComplexMatrix& x);

/// Scaling-and-squaring Taylor exponential, exposed for testing against the
/// spectral route.
ComplexMatrix matrix_exp_taylor(const ComplexMatrix& x);

/// Kronecker product; entry (i*rB + k, j*cB + l) = A(i,j) * B(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace of an operator on C^{d1} (x) C^{d2}. `keep` is 0 to keep the
/// first factor (trace out the second) or 1 to keep the second.
ComplexMatrix partial_trace(const ComplexMatrix& x, std::size_t d1,
                            std::size_t d2, int keep);

ComplexMatrix identity(std::size_t n);

/// Hermitian part (X + X^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& x);

}  // namespace orthoclone::matcore
