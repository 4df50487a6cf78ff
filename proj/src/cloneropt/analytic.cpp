#include <cmath>
#include <string>

#include "orthoclone/cloneropt.hpp"
#include "orthoclone/symspace.hpp"

namespace orthoclone::cloneropt {

CloneCoefficients analytic_alpha(int M) {
  if (M < 1) throw DomainError("analytic_alpha: M must be at least 1");
  const double m = M;
  CloneCoefficients c;
  c.M = M;
  c.aM = 1.0 / std::sqrt(2.0 * (m + 1));
  c.bM = std::sqrt(3.0) / std::sqrt(2.0 * m * (m + 1) * (m + 2));
  c.alpha.resize(M + 1);
  for (int j = 0; j <= M; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    c.alpha[j] = sign * (c.aM + c.bM * (m - 2.0 * j));
  }
  return c;
}

CloningIsometry build_isometry(int M) {
  const CloneCoefficients c = analytic_alpha(M);
  const int K = M + 1;
  CloningIsometry v{M, ComplexMatrix::Zero(K * K, 4)};
  auto row = [K](int k, int kp) { return k * K + kp; };
  for (int k = 0; k <= M; ++k) {
    const double tilt = c.bM * (2.0 * k - M);
    v.matrix(row(k, k), 2) = -(c.aM + tilt);  // |01>
    v.matrix(row(k, k), 3) = c.aM - tilt;     // |10>
    if (k >= 1) {                              // |00>: |M,k> (x) |M,k-1>
      v.matrix(row(k, k - 1), 0) = 2.0 * c.bM * std::sqrt(double(k) * (M - k + 1));
    }
    if (k < M) {                               // |11>: |M,k> (x) |M,k+1>
      v.matrix(row(k, k + 1), 1) = -2.0 * c.bM * std::sqrt(double(M - k) * (k + 1));
    }
  }
  return v;
}

namespace {

// Output state V|psi, psi_perp> reshaped to (M+1) x (M+1): rows clone index,
// columns anticlone index.
ComplexMatrix output_amplitudes(const CloningIsometry& v,
                                const su2kit::BlochAngles& angles) {
  const int K = v.M + 1;
  const ComplexVector out = v.matrix * orthogonal_pair(angles);
  ComplexMatrix psi(K, K);
  for (int k = 0; k < K; ++k)
    for (int kp = 0; kp < K; ++kp) psi(k, kp) = out[k * K + kp];
  return psi;
}

double overlap(const ComplexMatrix& rho, const ComplexMatrix& d, int column) {
  const ComplexVector s = d.col(column);
  return (s.adjoint() * rho * s)(0, 0).real();
}

}  // namespace

double isometry_clone_fidelity(const CloningIsometry& v,
                               const su2kit::BlochAngles& angles) {
  const ComplexMatrix amps = output_amplitudes(v, angles);
  const ComplexMatrix rho = amps * amps.adjoint();
  return overlap(symspace::single_qubit_marginal(rho),
                 su2kit::bloch_matrix(angles), 0);
}

double isometry_anticlone_fidelity(const CloningIsometry& v,
                                   const su2kit::BlochAngles& angles) {
  // Undo U0^{(x)M} on the anticlone factor, then trace out the clones.
  const ComplexMatrix amps = output_amplitudes(v, angles) *
                             symspace::spin_flip_symmetric(v.M).conjugate();
  const ComplexMatrix rho = amps.transpose() * amps.conjugate();
  return overlap(symspace::single_qubit_marginal(rho),
                 su2kit::bloch_matrix(angles), 1);
}

ChoiOperator choi_from_isometry(const CloningIsometry& v) {
  const int K = v.M + 1;
  if (v.matrix.rows() != K * K || v.matrix.cols() != 4) {
    throw ContractViolation("choi_from_isometry: isometry has wrong shape");
  }
  const double defect =
      matcore::max_abs(v.matrix.adjoint() * v.matrix - matcore::identity(4));
  if (defect > 1e-10) {
    throw ContractViolation("choi_from_isometry: V^dagger V deviates from identity by " +
                            std::to_string(defect));
  }
  // Column (h, k) of R holds the anticlone components of <M,k| V |h>.
  ComplexMatrix r(K, 4 * K);
  for (int h = 0; h < 4; ++h)
    for (int k = 0; k < K; ++k)
      for (int kp = 0; kp < K; ++kp) r(kp, h * K + k) = v.matrix(k * K + kp, h);
  return {v.M, r.adjoint() * r};
}

ComplexMatrix analytic_multiplier(int M) {
  ComplexMatrix lambda = ComplexMatrix::Zero(4, 4);
  lambda(0, 0) = 1.0;
  lambda(1, 1) = 1.0;
  lambda(2, 2) = 2.0;
  lambda(3, 3) = 2.0;
  lambda(2, 3) = -1.0;
  lambda(3, 2) = -1.0;
  return lambda * (fidelity_perp(M) / 6.0);
}

DualCertificate dual_certificate(const FidelityOperator& a) {
  DualCertificate cert = certify(analytic_multiplier(a.M), a);
  if (!cert.feasible()) {
    throw CertificateInvalid("dual_certificate: lambda (x) 1 - A has eigenvalue " +
                             std::to_string(cert.min_eigenvalue));
  }
  return cert;
}

DualCertificate dual_certificate(int M) { return dual_certificate(build_A(M)); }

}  // namespace orthoclone::cloneropt
