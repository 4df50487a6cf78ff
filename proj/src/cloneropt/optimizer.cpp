#include <algorithm>
#include <cmath>
#include <string>

#include "orthoclone/cloneropt.hpp"

namespace orthoclone::cloneropt {

double ChoiOperator::fidelity(const FidelityOperator& a) const {
  // Tr[chi A] without forming the product.
  return (matrix.transpose().cwiseProduct(a.matrix)).sum().real();
}

ComplexMatrix ChoiOperator::trace_over_output() const {
  return matcore::partial_trace(matrix, 4, static_cast<std::size_t>(M + 1), 0);
}

double ChoiOperator::trace_defect() const {
  return matcore::max_abs(trace_over_output() - matcore::identity(4));
}

DualCertificate certify(const ComplexMatrix& lambda, const FidelityOperator& a,
                        double cluster_tol) {
  if (lambda.rows() != 4 || lambda.cols() != 4) {
    throw ContractViolation("certify: lambda must be 4x4");
  }
  const ComplexMatrix slack =
      matcore::kron(lambda, matcore::identity(static_cast<std::size_t>(a.M + 1))) -
      a.matrix;
  const matcore::RealVector ev = matcore::hermitian_eigenvalues(slack);

  DualCertificate cert{a.M, lambda, {}, ev.size() ? ev[0] : 0.0};
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (cert.distinct_eigenvalues.empty() ||
        ev[i] - cert.distinct_eigenvalues.back() > cluster_tol) {
      cert.distinct_eigenvalues.push_back(ev[i]);
    }
  }
  return cert;
}

double extremal_residual(const ChoiOperator& chi, const DualCertificate& cert,
                         const FidelityOperator& a) {
  if (chi.M != a.M || cert.M != a.M || chi.matrix.rows() != a.matrix.rows()) {
    throw ContractViolation("extremal_residual: dimension mismatch");
  }
  const ComplexMatrix big_lambda =
      matcore::kron(cert.lambda, matcore::identity(static_cast<std::size_t>(a.M + 1)));
  return matcore::max_abs((a.matrix - big_lambda) * chi.matrix);
}

namespace {

// lambda = (Tr_K[A chi A])^{1/2}
ComplexMatrix multiplier(const FidelityOperator& a, const ComplexMatrix& chi) {
  const ComplexMatrix sandwich = a.matrix * chi * a.matrix;
  return matcore::psd_sqrt(matcore::hermitian_part(matcore::partial_trace(
      sandwich, 4, static_cast<std::size_t>(a.M + 1), 0)));
}

}  // namespace

OptimizeResult optimize_choi(const FidelityOperator& a,
                             const OptimizeOptions& options) {
  if (!(options.tol > 0.0)) throw ContractViolation("optimize_choi: tol must be positive");
  if (options.max_iter < 1) throw ContractViolation("optimize_choi: max_iter must be positive");
  const int K = a.M + 1;
  const auto k_dim = static_cast<std::size_t>(K);
  const ComplexMatrix id_k = matcore::identity(k_dim);

  ComplexMatrix chi = matcore::identity(4 * k_dim) / static_cast<double>(K);
  ChoiOperator current{a.M, chi};
  double fidelity = current.fidelity(a);

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    const ComplexMatrix sandwich = a.matrix * chi * a.matrix;
    const ComplexMatrix reduced =
        matcore::hermitian_part(matcore::partial_trace(sandwich, 4, k_dim, 0));
    const matcore::EigenSystem es = matcore::hermitian_eig(reduced);
    if (!es.values.allFinite() || es.values[3] <= options.lambda_floor) {
      throw RegularizationFailure("optimize_choi: Tr_K[A chi A] is singular at iteration " +
                                  std::to_string(iter));
    }
    // Lambda^{-1} with eigenvalues of lambda^2 floored before the square root.
    ComplexMatrix inv_sqrt = es.vectors;
    for (int c = 0; c < 4; ++c) {
      inv_sqrt.col(c) /= std::sqrt(std::max(es.values[c], options.lambda_floor));
    }
    const ComplexMatrix lambda_inv = inv_sqrt * es.vectors.adjoint();
    const ComplexMatrix big_inv = matcore::kron(lambda_inv, id_k);

    chi = matcore::hermitian_part(big_inv * sandwich * big_inv);
    current.matrix = chi;
    const double next = current.fidelity(a);
    const double change = std::abs(next - fidelity);
    fidelity = next;

    if (change < options.tol && current.trace_defect() < 10.0 * options.tol) {
      return {current, certify(multiplier(a, chi), a), fidelity, iter};
    }
  }
  OptimizeResult last{current, certify(multiplier(a, chi), a), fidelity,
                      options.max_iter};
  throw NonConvergence("optimize_choi: no convergence after " +
                           std::to_string(options.max_iter) + " iterations",
                       std::move(last));
}

OptimizeResult optimize_choi(int M, const OptimizeOptions& options) {
  return optimize_choi(build_A(M), options);
}

}  // namespace orthoclone::cloneropt
