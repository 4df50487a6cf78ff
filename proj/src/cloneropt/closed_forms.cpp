#include <cmath>
#include <string>

#include "orthoclone/cloneropt.hpp"

namespace orthoclone::cloneropt {

double fidelity_perp(long long M) {
  if (M < 1) throw DomainError("fidelity_perp: M must be at least 1");
  const double m = static_cast<double>(M);
  return 0.5 * (1.0 + std::sqrt((m + 2.0) / (3.0 * m)));
}

double fidelity_parallel(long long N, long long M) {
  if (N < 1 || M < N) {
    throw DomainError("fidelity_parallel: need M >= N >= 1 (N = " +
                      std::to_string(N) + ", M = " + std::to_string(M) + ")");
  }
  const double n = static_cast<double>(N);
  const double m = static_cast<double>(M);
  return (m * n + m + n) / (m * (n + 2.0));
}

double fidelity_perp_general(long long N, long long M) {
  if (N < 1 || M < N) {
    throw DomainError("fidelity_perp_general: need M >= N >= 1 (N = " +
                      std::to_string(N) + ", M = " + std::to_string(M) + ")");
  }
  const double n = static_cast<double>(N);
  const double m = static_cast<double>(M);
  const double p = (n - 1) * (n * n - 15 * n - 18) + 8 * m * (n + 1) * (m + 3 - n);
  if (p < 0) {
    throw DomainError("fidelity_perp_general: P < 0 for N = " + std::to_string(N) +
                      ", M = " + std::to_string(M));
  }
  return (n + 1) / (n + 3) + (3 * (n - 1) + std::sqrt(p / (n + 2))) / (2 * m * (n + 3));
}

CrossoverResult crossover(long long N, long long m_max) {
  if (N < 1) throw DomainError("crossover: N must be at least 1");
  if (m_max < N + 1) {
    throw DomainError("crossover: m_max must be at least N + 1");
  }
  CrossoverResult result{N, m_max, std::nullopt, std::nullopt};
  for (long long M = N + 1; M <= m_max; ++M) {
    const double diff = fidelity_perp_general(N, M) - fidelity_parallel(N + 1, M);
    if (std::abs(diff) < kCrossoverEqualityTol) {
      if (!result.equality) result.equality = M;
    } else if (diff > 0) {
      result.strict = M;
      break;
    }
  }
  return result;
}

}  // namespace orthoclone::cloneropt
