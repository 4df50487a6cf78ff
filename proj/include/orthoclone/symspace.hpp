#pragma once

// Symmetric (Dicke) subspace of M qubits. The basis state |M,k> is the
// normalized symmetric state with k qubits in |0> and M-k in |1>.

#include <span>

#include "orthoclone/matcore.hpp"
#include "orthoclone/su2kit.hpp"

namespace orthoclone::symspace {

using matcore::Complex;
using matcore::ComplexMatrix;
using matcore::ComplexVector;

inline constexpr int kMaxExplicitQubits = 20;

struct DickeLabel {
  int M = 0;
  int k = 0;
};

/// Coefficients over the |M,k> basis, k = 0..M.
struct SymVector {
  int M = 0;
  ComplexVector coeffs;

  [[nodiscard]] Complex inner(const SymVector& other) const;  // <this|other>
};

/// Amplitudes of |M,k> over the 2^M computational strings. Qubit 0 is the most
/// significant bit of the string index.
Eigen::VectorXd dicke_vector(const DickeLabel& label);

/// Dicke-basis coefficients of |j psi, (M-j) psi_perp>, the normalized
/// symmetric state with j qubits in |psi> and M-j in |psi_perp>.
SymVector sym_product_state(int M, int j, const su2kit::BlochAngles& angles);

/// Tr_{all but one qubit}[ |M,k><M,k'| ] as a 2x2 matrix in the {|0>,|1>}
/// basis.
ComplexMatrix reduced_qubit(int M, int k, int kp);

/// Single-qubit marginal of a density operator on the symmetric subspace.
ComplexMatrix single_qubit_marginal(const ComplexMatrix& rho_sym);

/// U0^{(x)M} restricted to the symmetric subspace:
/// |M,k> -> (-1)^{M-k} |M,M-k>.
ComplexMatrix spin_flip_symmetric(int M);

/// Sum_j ((M-j)/M) alpha_j^2 with M = alpha.size() - 1. Throws
/// ContractViolation unless sum alpha_j^2 = 1 within 1e-10.
double clone_fidelity_series(std::span<const double> alpha);

}  // namespace orthoclone::symspace
