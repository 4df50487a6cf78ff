#include "orthoclone/symspace.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "orthoclone/errors.hpp"

namespace orthoclone::symspace {

namespace {

void require_index(int M, int k, const char* what) {
  if (M < 1) throw SizeError(std::string(what) + ": M must be positive");
  if (k < 0 || k > M) {
    throw SizeError(std::string(what) + ": index " + std::to_string(k) +
                    " outside [0, " + std::to_string(M) + "]");
  }
}

}  // namespace

Complex SymVector::inner(const SymVector& other) const {
  if (M != other.M) throw ContractViolation("SymVector::inner: M mismatch");
  return coeffs.dot(other.coeffs);  // Eigen's dot conjugates the left operand
}

Eigen::VectorXd dicke_vector(const DickeLabel& label) {
  if (label.M < 1 || label.M > kMaxExplicitQubits) {
    throw SizeError("dicke_vector: M = " + std::to_string(label.M) +
                    " outside [1, " + std::to_string(kMaxExplicitQubits) + "]");
  }
  require_index(label.M, label.k, "dicke_vector");
  const std::uint32_t dim = 1u << label.M;
  const double amp =
      1.0 / std::sqrt(static_cast<double>(su2kit::binomial(label.M, label.k)));
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  const int ones = label.M - label.k;
  for (std::uint32_t x = 0; x < dim; ++x) {
    if (std::popcount(x) == ones) v[x] = amp;
  }
  return v;
}

SymVector sym_product_state(int M, int j, const su2kit::BlochAngles& angles) {
  require_index(M, j, "sym_product_state");
  const su2kit::WignerD d = su2kit::wigner_bigD(M, angles.theta);
  SymVector out{M, ComplexVector(M + 1)};
  for (int k = 0; k <= M; ++k) {
    out.coeffs[k] = std::polar(d.entries(k, j), (j - k) * angles.phi);
  }
  return out;
}

ComplexMatrix reduced_qubit(int M, int k, int kp) {
  require_index(M, k, "reduced_qubit");
  require_index(M, kp, "reduced_qubit");
  ComplexMatrix r = ComplexMatrix::Zero(2, 2);
  const double m = M;
  if (k == kp) {
    r(0, 0) = k / m;
    r(1, 1) = (M - k) / m;
  } else if (kp == k - 1) {
    r(0, 1) = std::sqrt(double(k) * (M - k + 1)) / m;
  } else if (kp == k + 1) {
    r(1, 0) = std::sqrt(double(k + 1) * (M - k)) / m;
  }
  return r;
}

ComplexMatrix single_qubit_marginal(const ComplexMatrix& rho_sym) {
  if (rho_sym.rows() != rho_sym.cols() || rho_sym.rows() < 2) {
    throw ContractViolation("single_qubit_marginal: expected square (M+1)x(M+1)");
  }
  const int M = static_cast<int>(rho_sym.rows()) - 1;
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (int k = 0; k <= M; ++k) {
    for (int kp = std::max(0, k - 1); kp <= std::min(M, k + 1); ++kp) {
      out += rho_sym(k, kp) * reduced_qubit(M, k, kp);
    }
  }
  return out;
}

ComplexMatrix spin_flip_symmetric(int M) {
  if (M < 1) throw SizeError("spin_flip_symmetric: M must be positive");
  ComplexMatrix u = ComplexMatrix::Zero(M + 1, M + 1);
  for (int k = 0; k <= M; ++k) {
    u(M - k, k) = ((M - k) % 2 == 0) ? 1.0 : -1.0;
  }
  return u;
}

double clone_fidelity_series(std::span<const double> alpha) {
  if (alpha.size() < 2) {
    throw ContractViolation("clone_fidelity_series: need at least M = 1");
  }
  double norm = 0.0;
  for (double a : alpha) norm += a * a;
  if (std::abs(norm - 1.0) > 1e-10) {
    throw ContractViolation("clone_fidelity_series: coefficients not normalized (sum " +
                            std::to_string(norm) + ")");
  }
  const int M = static_cast<int>(alpha.size()) - 1;
  double f = 0.0;
  for (int j = 0; j <= M; ++j) {
    f += (double(M - j) / M) * alpha[j] * alpha[j];
  }
  return f;
}

}  // namespace orthoclone::symspace
