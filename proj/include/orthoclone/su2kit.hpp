#pragma once

// SU(2) and Bloch-sphere utilities: the single-qubit matrix d(Omega) whose
// columns are |psi> and |psi_perp>, exact Haar averages of trigonometric
// monomials, the real rotation matrices D^M_{kj}(theta) of the symmetric
// M-qubit representation, and the spin flip U0.

#include <cstdint>
#include <vector>

#include "orthoclone/matcore.hpp"

namespace orthoclone::su2kit {

using matcore::Complex;
using matcore::ComplexMatrix;

/// Direction on the Bloch sphere. Use `normalized` to fold arbitrary angles
/// into theta in [0, pi], phi in [0, 2 pi).
struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;

  [[nodiscard]] BlochAngles normalized() const;
};

/// d(Omega) = [[cos(t/2), e^{-i phi} sin(t/2)], [e^{i phi} sin(t/2), -cos(t/2)]].
/// Column 0 is |psi>, column 1 is |psi_perp>.
ComplexMatrix bloch_matrix(const BlochAngles& angles);

/// Exact binomial coefficient. Throws SizeError on uint64 overflow.
std::uint64_t binomial(unsigned n, unsigned k);

/// (1/4pi) Integral cos^{2p}(t/2) sin^{2q}(t/2) e^{i m phi} sin(t) dt dphi
/// = delta_{m,0} p! q! / (p+q+1)!.
double haar_monomial(unsigned p, unsigned q, int m);

/// coef * cos^{cos_power}(t/2) * sin^{sin_power}(t/2) * e^{i phase phi}.
struct TrigMonomial {
  Complex coef{1.0, 0.0};
  int cos_power = 0;
  int sin_power = 0;
  int phase = 0;

  TrigMonomial operator*(const TrigMonomial& other) const;
  [[nodiscard]] TrigMonomial conj() const;
};

/// Entry (row, col) of d(Omega) as a single monomial.
TrigMonomial bloch_element(int row, int col);

/// Haar average of a monomial. Odd powers only survive with a nonzero phase
/// winding, whose azimuthal integral vanishes.
Complex haar_average(const TrigMonomial& mono);

inline constexpr int kMaxWignerM = 20;

/// Columns hold the Dicke-basis coefficients of |j psi, (M-j) psi_perp> at
/// phi = 0: entry (k, j) is D^M_{kj}(theta), k counting qubits in |0>.
struct WignerD {
  int M = 0;
  double theta = 0.0;
  Eigen::MatrixXd entries;

  [[nodiscard]] double at(int k, int j) const;  // 0 outside [0, M]
};

WignerD wigner_bigD(int M, double theta);

/// |lhs - rhs| of the three-term recurrence
/// (2j-M) D_kj = (2k-M) cos t D_kj + sin t sqrt((k+1)(M-k)) D_{k+1,j}
///                                 + sin t sqrt(k(M-k+1)) D_{k-1,j}.
double recurrence_residual(const WignerD& d, int k, int j);

/// U0: |0> -> |1>, |1> -> -|0>.
ComplexMatrix spin_flip();

}  // namespace orthoclone::su2kit
