#include "orthoclone/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orthoclone/errors.hpp"

namespace orthoclone::matcore {

namespace {

void require_square(const ComplexMatrix& x, const char* what) {
  if (x.rows() != x.cols()) {
    throw ContractViolation(std::string(what) + ": matrix is " +
                            std::to_string(x.rows()) + "x" +
                            std::to_string(x.cols()) + ", expected square");
  }
}

void require_hermitian(const ComplexMatrix& x, const char* what) {
  require_square(x, what);
  const double defect = hermiticity_defect(x);
  if (defect > kHermitianTolerance) {
    throw ContractViolation(std::string(what) +
                            ": matrix is not Hermitian (defect " +
                            std::to_string(defect) + ")");
  }
}

// V f(D) V^dagger for a real spectral function.
template <class F>
ComplexMatrix spectral_apply(const EigenSystem& es, F&& f) {
  ComplexMatrix scaled = es.vectors;
  for (Eigen::Index c = 0; c < scaled.cols(); ++c) {
    scaled.col(c) *= f(es.values[c]);
  }
  return scaled * es.vectors.adjoint();
}

}  // namespace

double max_abs(const ComplexMatrix& x) {
  if (x.size() == 0) return 0.0;
  return x.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& x) {
  require_square(x, "hermiticity_defect");
  return max_abs(x - x.adjoint());
}

bool is_hermitian(const ComplexMatrix& x, double tol) {
  return x.rows() == x.cols() && hermiticity_defect(x) <= tol;
}

EigenSystem hermitian_eig(const ComplexMatrix& h) {
  require_hermitian(h, "hermitian_eig");
  // Symmetrize so the solver only sees exact Hermitian data.
  const ComplexMatrix sym = hermitian_part(h);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix& h) {
  require_hermitian(h, "hermitian_eigenvalues");
  const ComplexMatrix sym = hermitian_part(h);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym,
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian_eigenvalues: eigensolver did not converge");
  }
  return solver.eigenvalues();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& p) {
  const EigenSystem es = hermitian_eig(p);
  if (es.values.size() > 0 && es.values[0] < -kPsdClipTolerance) {
    throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(es.values[0]) +
                      " below -1e-10");
  }
  return spectral_apply(es, [](double v) { return std::sqrt(std::max(v, 0.0)); });
}

ComplexMatrix psd_inverse(const ComplexMatrix& p, double floor) {
  const EigenSystem es = hermitian_eig(p);
  return spectral_apply(es, [floor](double v) { return 1.0 / std::max(v, floor); });
}

ComplexMatrix matrix_exp(const ComplexMatrix& x) {
  require_square(x, "matrix_exp");
  if (x.size() == 0) return x;
  const double scale = std::max(1.0, max_abs(x));
  if (max_abs(x - x.adjoint()) <= 1e-13 * scale) {
    const EigenSystem es = hermitian_eig(hermitian_part(x));
    ComplexMatrix scaled = es.vectors;
    for (Eigen::Index c = 0; c < scaled.cols(); ++c) {
      scaled.col(c) *= std::exp(es.values[c]);
    }
    return scaled * es.vectors.adjoint();
  }
  if (max_abs(x + x.adjoint()) <= 1e-13 * scale) {
    // X = iK with K Hermitian.
    const ComplexMatrix k = hermitian_part(Complex(0.0, -1.0) * x);
    const EigenSystem es = hermitian_eig(k);
    ComplexMatrix scaled = es.vectors;
    for (Eigen::Index c = 0; c < scaled.cols(); ++c) {
      scaled.col(c) *= std::polar(1.0, es.values[c]);
    }
    return scaled * es.vectors.adjoint();
  }
  return matrix_exp_taylor(x);
}

ComplexMatrix matrix_exp_taylor(const ComplexMatrix& x) {
  require_square(x, "matrix_exp_taylor");
  const Eigen::Index n = x.rows();
  // Infinity norm bounds the spectral radius.
  const double norm = n == 0 ? 0.0 : x.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const ComplexMatrix scaled = x / std::ldexp(1.0, squarings);

  ComplexMatrix result = ComplexMatrix::Identity(n, n);
  ComplexMatrix term = ComplexMatrix::Identity(n, n);
  for (int k = 1; k <= 30; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    result += term;
    if (max_abs(term) < 1e-18 * std::max(1.0, max_abs(result))) break;
  }
  for (int s = 0; s < squarings; ++s) {
    result = (result * result).eval();
  }
  return result;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& x, std::size_t d1,
                            std::size_t d2, int keep) {
  const auto n = static_cast<Eigen::Index>(d1 * d2);
  if (x.rows() != n || x.cols() != n) {
    throw ContractViolation("partial_trace: operator is " +
                            std::to_string(x.rows()) + "x" +
                            std::to_string(x.cols()) + ", factors give " +
                            std::to_string(n));
  }
  if (keep != 0 && keep != 1) {
    throw ContractViolation("partial_trace: keep must be 0 or 1");
  }
  const auto e1 = static_cast<Eigen::Index>(d1);
  const auto e2 = static_cast<Eigen::Index>(d2);
  if (keep == 0) {
    ComplexMatrix out = ComplexMatrix::Zero(e1, e1);
    for (Eigen::Index i = 0; i < e1; ++i)
      for (Eigen::Index j = 0; j < e1; ++j)
        for (Eigen::Index k = 0; k < e2; ++k) out(i, j) += x(i * e2 + k, j * e2 + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(e2, e2);
  for (Eigen::Index k = 0; k < e2; ++k)
    for (Eigen::Index l = 0; l < e2; ++l)
      for (Eigen::Index i = 0; i < e1; ++i) out(k, l) += x(i * e2 + k, i * e2 + l);
  return out;
}

ComplexMatrix identity(std::size_t n) {
  const auto e = static_cast<Eigen::Index>(n);
  return ComplexMatrix::Identity(e, e);
}

ComplexMatrix hermitian_part(const ComplexMatrix& x) {
  return 0.5 * (x + x.adjoint());
}

}  // namespace orthoclone::matcore
