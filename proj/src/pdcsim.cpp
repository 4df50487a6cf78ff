#include "orthoclone/pdcsim.hpp"

#include <cmath>
#include <string>

namespace orthoclone::pdcsim {

GainParameter GainParameter::from_gamma(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw DomainError("GainParameter: gamma must be finite and non-negative");
  }
  const double g = std::tanh(gamma);
  if (g >= 1.0) throw DomainError("GainParameter: tanh(gamma) rounds to 1");
  const double s = std::sinh(gamma);
  return {gamma, g, s * s};
}

GainParameter GainParameter::from_y(double y) {
  if (!(y >= 0.0) || !std::isfinite(y)) {
    throw DomainError("GainParameter: y must be finite and non-negative");
  }
  const double g = std::sqrt(y / (1.0 + y));
  return {std::asinh(std::sqrt(y)), g, y};
}

PdcBlock pdc_amplitudes(const GainParameter& gain, int M) {
  if (M < 1) throw DomainError("pdc_amplitudes: M must be at least 1");
  if (!(gain.Gamma >= 0.0) || gain.Gamma >= 1.0) {
    throw DomainError("pdc_amplitudes: Gamma must lie in [0, 1)");
  }
  const double g2 = gain.Gamma * gain.Gamma;
  const double prefactor = std::pow(gain.Gamma, M - 1) * (1.0 - g2);

  PdcBlock block{M, gain, std::vector<double>(M + 1), {}, 0.0};
  double norm2 = 0.0;
  for (int j = 0; j <= M; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    block.amplitudes[j] = sign * ((M - j) * (1.0 - g2) - g2);
    norm2 += block.amplitudes[j] * block.amplitudes[j];
  }
  block.success_prob = prefactor * prefactor * norm2;
  block.raw_amplitudes = block.amplitudes;
  for (double& a : block.raw_amplitudes) a *= prefactor;

  double scale = 1.0 / std::sqrt(norm2);
  for (double a : block.amplitudes) {
    if (a != 0.0) {
      if (a < 0.0) scale = -scale;
      break;
    }
  }
  for (double& a : block.amplitudes) a *= scale;
  return block;
}

double pdc_fidelity(int M, double y) {
  if (M < 1) throw DomainError("pdc_fidelity: M must be at least 1");
  if (!(y >= 0.0)) throw DomainError("pdc_fidelity: y must be non-negative");
  const double m = M;
  const double num = 3 * y * y - 2 * y * (2 * m + 1) + 1.5 * m * (m + 1);
  const double den = 6 * y * y - 6 * m * y + m * (2 * m + 1);
  return num / den;
}

double optimal_gain(int M) {
  if (M < 1) throw DomainError("optimal_gain: M must be at least 1");
  const double m = M;
  return 0.5 * m - 0.5 * std::sqrt(m * (m + 2) / 3.0);
}

std::vector<GainRow> gain_scan(int M, const std::vector<double>& y_grid) {
  if (y_grid.empty()) throw ContractViolation("gain_scan: empty gain grid");
  std::vector<GainRow> rows;
  rows.reserve(y_grid.size());
  for (double y : y_grid) {
    const PdcBlock block = pdc_amplitudes(GainParameter::from_y(y), M);
    rows.push_back({y, pdc_fidelity(M, y), block.success_prob});
  }
  return rows;
}

std::size_t best_row(const std::vector<GainRow>& rows) {
  if (rows.empty()) throw ContractViolation("best_row: no rows");
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].fidelity > rows[best].fidelity) best = i;
  }
  return best;
}

std::size_t FockState4::index(const Occupation& n) const {
  const auto c = static_cast<std::size_t>(cutoff + 1);
  auto ok = [this](int v) { return v >= 0 && v <= cutoff; };
  if (!ok(n.v1) || !ok(n.h1) || !ok(n.v2) || !ok(n.h2)) {
    throw SizeError("FockState4: occupation outside the cutoff window");
  }
  return ((static_cast<std::size_t>(n.v1) * c + n.h1) * c + n.v2) * c + n.h2;
}

Complex FockState4::amplitude(const Occupation& n) const {
  return amplitudes[static_cast<Eigen::Index>(index(n))];
}

ComplexVector FockState4::block(int M) const {
  if (M < 0 || M > cutoff) {
    throw SizeError("FockState4::block: M = " + std::to_string(M) +
                    " outside the cutoff window");
  }
  ComplexVector out(M + 1);
  for (int j = 0; j <= M; ++j) out[j] = amplitude({M - j, j, j, M - j});
  return out;
}

ComplexMatrix fock_propagator(double gamma, const PairLattice& lattice) {
  const int n = lattice.dim();
  // gamma (B - B^dagger) with B = a+_V1 a+_H2 - a+_H1 a+_V2.
  ComplexMatrix generator = ComplexMatrix::Zero(n, n);
  for (int p = 0; p <= lattice.cap; ++p) {
    for (int q = 0; q <= lattice.cap; ++q) {
      const int from = lattice.index(p, q);
      if (p < lattice.cap) {
        const int to = lattice.index(p + 1, q);
        generator(to, from) += gamma * (p + 1);
        generator(from, to) -= gamma * (p + 1);
      }
      if (q < lattice.cap) {
        const int to = lattice.index(p, q + 1);
        generator(to, from) -= gamma * (q + 1);
        generator(from, to) += gamma * (q + 1);
      }
    }
  }
  return matcore::matrix_exp(generator);
}

FockState4 fock_oracle(double gamma, int cutoff, const FockOracleOptions& options) {
  if (cutoff < 2) throw SizeError("fock_oracle: cutoff must be at least 2");
  if (!(gamma >= 0.0)) throw DomainError("fock_oracle: gamma must be non-negative");
  const PairLattice lattice{2 * cutoff + options.guard};
  const ComplexMatrix u = fock_propagator(gamma, lattice);
  const ComplexVector evolved = u.col(lattice.index(1, 0));

  double boundary = 0.0;
  for (int p = 0; p <= lattice.cap; ++p) {
    for (int q = 0; q <= lattice.cap; ++q) {
      if (p == lattice.cap || q == lattice.cap) {
        boundary += std::norm(evolved[lattice.index(p, q)]);
      }
    }
  }
  if (boundary > options.tail_tol) {
    throw InsufficientCutoff("fock_oracle: weight " + std::to_string(boundary) +
                             " on the propagation boundary exceeds tolerance; "
                             "gamma too large for cutoff " + std::to_string(cutoff));
  }

  FockState4 state;
  state.cutoff = cutoff;
  state.gamma = gamma;
  const auto c = static_cast<Eigen::Index>(cutoff + 1);
  state.amplitudes = ComplexVector::Zero(c * c * c * c);
  state.truncation_tail = boundary;
  double kept = 0.0;
  for (int p = 0; p <= cutoff; ++p) {
    for (int q = 0; q <= cutoff; ++q) {
      const Complex amp = evolved[lattice.index(p, q)];
      state.amplitudes[static_cast<Eigen::Index>(state.index({p, q, q, p}))] = amp;
      kept += std::norm(amp);
    }
  }
  state.window_tail = std::max(0.0, 1.0 - kept);
  return state;
}

}  // namespace orthoclone::pdcsim
