#pragma once

// Optimal universal cloning of an orthogonal qubit pair |psi, psi_perp> into
// M clones of |psi>.
//
// Operators act on H (x) K where H is the two-qubit input space and K the
// symmetric M-qubit output space. The H basis is ordered
//   0: |00>, 1: |11>, 2: |01>, 3: |10>
// and the composite index is h * (M+1) + k with k counting qubits in |0>.
//
// Three routes to the optimal fidelity are provided and cross-checked:
//  * the fixed-point iteration chi <- L^-1 A chi A L^-1 on the Choi operator,
//  * the closed-form cloner written as an isometry H -> K (x) K',
//  * the Lagrange-multiplier certificate bounding Tr[chi A] from above.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "orthoclone/errors.hpp"
#include "orthoclone/matcore.hpp"
#include "orthoclone/su2kit.hpp"

namespace orthoclone::cloneropt {

using matcore::Complex;
using matcore::ComplexMatrix;
using matcore::ComplexVector;

/// Input qubit labels (i, j) for each H basis index.
inline constexpr std::array<std::pair<int, int>, 4> kInputBasis{
    {{0, 0}, {1, 1}, {0, 1}, {1, 0}}};

inline constexpr int kMaxOperatorM = 30;

/// Coefficients of |psi, psi_perp> in the H basis: d_{i0} d_{j1}.
ComplexVector orthogonal_pair(const su2kit::BlochAngles& angles);

class CertificateInvalid : public Error {
 public:
  using Error::Error;
};

class RegularizationFailure : public Error {
 public:
  using Error::Error;
};

/// Mean single-clone fidelity of a cloning map is Tr[chi A].
struct FidelityOperator {
  int M = 0;
  ComplexMatrix matrix;

  [[nodiscard]] int dim() const { return 4 * (M + 1); }
};

/// Gram matrix of the ancilla states, chi[(h,k),(h',k')] = <R_hk|R_h'k'>.
/// Trace preservation of the map reads Tr_K[chi] = 1_H.
struct ChoiOperator {
  int M = 0;
  ComplexMatrix matrix;

  [[nodiscard]] double fidelity(const FidelityOperator& a) const;
  /// max |Tr_K[chi] - 1_H|
  [[nodiscard]] double trace_defect() const;
  [[nodiscard]] ComplexMatrix trace_over_output() const;
};

/// Lagrange multiplier lambda with the spectrum of lambda (x) 1_K - A.
struct DualCertificate {
  int M = 0;
  ComplexMatrix lambda;             // 4x4 in the H basis order
  std::vector<double> distinct_eigenvalues;  // ascending, clustered
  double min_eigenvalue = 0.0;

  [[nodiscard]] double trace() const { return lambda.trace().real(); }
  [[nodiscard]] bool feasible(double tol = 1e-9) const {
    return min_eigenvalue >= -tol;
  }
};

struct CloneCoefficients {
  int M = 0;
  std::vector<double> alpha;  // alpha_0 .. alpha_M
  double aM = 0.0;
  double bM = 0.0;
};

/// Columns are the images of the H basis states in K (x) K', the anticlone
/// factor K' carrying the spin flip U0^{(x)M}. Row index k * (M+1) + k'.
struct CloningIsometry {
  int M = 0;
  ComplexMatrix matrix;
};

struct OptimizeOptions {
  double tol = 1e-12;
  int max_iter = 10000;
  double lambda_floor = 1e-14;
};

struct OptimizeResult {
  ChoiOperator chi;
  DualCertificate certificate;
  double fidelity = 0.0;
  int iterations = 0;

  /// Tr[lambda] - Tr[chi A]
  [[nodiscard]] double duality_gap() const {
    return certificate.trace() - fidelity;
  }
};

/// Raised when the iteration budget runs out; carries the last iterate.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, OptimizeResult last)
      : Error(what), last_(std::move(last)) {}
  [[nodiscard]] const OptimizeResult& last() const { return last_; }

 private:
  OptimizeResult last_;
};

/// Exact Haar-moment construction of A for 1 <= M <= 30.
FidelityOperator build_A(int M);

/// Fixed-point iteration from the maximally mixed feasible point
/// chi_0 = 1 / (M+1). Stops once the fidelity moves by less than `tol` and
/// Tr_K[chi] is within 10 tol of the identity.
OptimizeResult optimize_choi(const FidelityOperator& a,
                             const OptimizeOptions& options = {});
OptimizeResult optimize_choi(int M, const OptimizeOptions& options = {});

/// Spectrum data of lambda (x) 1_K - A. Eigenvalues closer than
/// `cluster_tol` are reported once.
DualCertificate certify(const ComplexMatrix& lambda, const FidelityOperator& a,
                        double cluster_tol = 1e-8);

/// max |(A - lambda (x) 1_K) chi|
double extremal_residual(const ChoiOperator& chi, const DualCertificate& cert,
                         const FidelityOperator& a);

/// (F_perp(M)/6) [[1,0,0,0],[0,1,0,0],[0,0,2,-1],[0,0,-1,2]] in the H basis.
ComplexMatrix analytic_multiplier(int M);

/// lambda = (F_perp(M)/6) [[1,0,0,0],[0,1,0,0],[0,0,2,-1],[0,0,-1,2]],
/// checked for dual feasibility against build_A(M). Throws
/// CertificateInvalid when lambda (x) 1_K - A is not PSD within 1e-9.
DualCertificate dual_certificate(int M);
DualCertificate dual_certificate(const FidelityOperator& a);

/// alpha_j = (-1)^j (a_M + b_M (M - 2j)).
CloneCoefficients analytic_alpha(int M);

CloningIsometry build_isometry(int M);

/// Clone-side fidelity <psi| rho_1 |psi> of V|psi, psi_perp>.
double isometry_clone_fidelity(const CloningIsometry& v,
                               const su2kit::BlochAngles& angles);

/// Anticlone fidelity <psi_perp| rho'_1 |psi_perp> after undoing the spin flip.
double isometry_anticlone_fidelity(const CloningIsometry& v,
                                   const su2kit::BlochAngles& angles);

/// Gram matrix of the anticlone components of each column. Throws
/// ContractViolation unless V^dagger V = 1 within 1e-10.
ChoiOperator choi_from_isometry(const CloningIsometry& v);

/// (1 + sqrt((M+2)/(3M))) / 2
double fidelity_perp(long long M);

/// (MN + M + N) / (M (N+2)), the optimal N -> M cloner of identical qubits.
double fidelity_parallel(long long N, long long M);

/// Optimal fidelity for N copies of psi plus one psi_perp:
/// (N+1)/(N+3) + (3(N-1) + sqrt(P/(N+2))) / (2M(N+3)),
/// P = (N-1)(N^2-15N-18) + 8M(N+1)(M+3-N).
double fidelity_perp_general(long long N, long long M);

inline constexpr double kCrossoverEqualityTol = 1e-12;

struct CrossoverResult {
  long long N = 0;
  long long m_max = 0;
  std::optional<long long> strict;    // first M with a strict advantage
  std::optional<long long> equality;  // an M with |difference| < 1e-12
};

/// Scans M = N+1 .. m_max comparing fidelity_perp_general(N, M) with
/// fidelity_parallel(N+1, M). Differences below kCrossoverEqualityTol count
/// as equality, not advantage.
CrossoverResult crossover(long long N, long long m_max);

}  // namespace orthoclone::cloneropt
