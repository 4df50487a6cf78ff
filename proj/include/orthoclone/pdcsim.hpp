#pragma once

// Stimulated parametric down-conversion as a probabilistic cloner. One photon
// |psi> enters mode 1 and one photon |psi_perp> enters mode 2 of a crystal
// with interaction H = i g (a+_V1 a+_H2 - a+_H1 a+_V2) + h.c. (hbar = 1).
// Detecting M photons in mode 2 leaves M approximate clones in mode 1.

#include <cstddef>
#include <vector>

#include "orthoclone/errors.hpp"
#include "orthoclone/matcore.hpp"

namespace orthoclone::pdcsim {

using matcore::Complex;
using matcore::ComplexMatrix;
using matcore::ComplexVector;

/// Interaction strength gamma = g t with Gamma = tanh(gamma) and
/// y = sinh^2(gamma) = Gamma^2 / (1 - Gamma^2).
struct GainParameter {
  double gamma = 0.0;
  double Gamma = 0.0;
  double y = 0.0;

  static GainParameter from_gamma(double gamma);
  static GainParameter from_y(double y);
};

/// Post-selected M-photon block. amplitudes[j] multiplies
/// |M-j>_V1 |j>_H1 |j>_V2 |M-j>_H2; normalized with amplitudes[0] >= 0.
struct PdcBlock {
  int M = 0;
  GainParameter gain;
  std::vector<double> amplitudes;
  /// Unnormalized amplitudes as they appear in the full output state,
  /// including the Gamma-dependent prefactor and without sign alignment.
  std::vector<double> raw_amplitudes;
  /// Squared norm of the unnormalized block
  /// Gamma^{M-1} (1-Gamma^2) (-1)^j [(M-j)(1-Gamma^2) - Gamma^2].
  double success_prob = 0.0;
};

PdcBlock pdc_amplitudes(const GainParameter& gain, int M);

/// (3y^2 - 2y(2M+1) + 3M(M+1)/2) / (6y^2 - 6My + M(2M+1))
double pdc_fidelity(int M, double y);

/// y_opt = M/2 - sqrt(M(M+2)/3)/2
double optimal_gain(int M);

struct GainRow {
  double y = 0.0;
  double fidelity = 0.0;
  double success_prob = 0.0;
};

std::vector<GainRow> gain_scan(int M, const std::vector<double>& y_grid);

/// Index of the row with the largest fidelity (first on ties).
std::size_t best_row(const std::vector<GainRow>& rows);

class InsufficientCutoff : public Error {
 public:
  using Error::Error;
};

/// Photon numbers (n_V1, n_H1, n_V2, n_H2).
struct Occupation {
  int v1 = 0;
  int h1 = 0;
  int v2 = 0;
  int h2 = 0;
};

/// Four-mode state truncated to at most `cutoff` photons per mode.
struct FockState4 {
  int cutoff = 0;
  double gamma = 0.0;
  ComplexVector amplitudes;  // (cutoff+1)^4 entries, see index()
  /// Weight of the evolved state outside the window (physical tail).
  double window_tail = 0.0;
  /// Weight on the boundary of the internal propagation lattice; bounds the
  /// error introduced by truncating the propagator.
  double truncation_tail = 0.0;

  [[nodiscard]] std::size_t index(const Occupation& n) const;
  [[nodiscard]] Complex amplitude(const Occupation& n) const;
  [[nodiscard]] double norm() const { return amplitudes.norm(); }
  /// Amplitudes of |M-j, j, j, M-j>, j = 0..M.
  [[nodiscard]] ComplexVector block(int M) const;
};

/// Reachable states from |1,0,0,1>: (p, q, q, p) with p, q <= cap. Index
/// p * (cap+1) + q.
struct PairLattice {
  int cap = 0;

  [[nodiscard]] int dim() const { return (cap + 1) * (cap + 1); }
  [[nodiscard]] int index(int p, int q) const { return p * (cap + 1) + q; }
};

/// exp(-i H t) restricted to the reachable lattice.
ComplexMatrix fock_propagator(double gamma, const PairLattice& lattice);

struct FockOracleOptions {
  /// Per-mode cap of the propagation lattice is 2 * cutoff + guard.
  int guard = 6;
  double tail_tol = 1e-8;
};

/// Evolves |1>_V1 |0>_H1 |0>_V2 |1>_H2 with the exact matrix exponential.
/// Throws InsufficientCutoff when the internal lattice boundary carries more
/// than `tail_tol` of the weight.
FockState4 fock_oracle(double gamma, int cutoff,
                       const FockOracleOptions& options = {});

}  // namespace orthoclone::pdcsim
