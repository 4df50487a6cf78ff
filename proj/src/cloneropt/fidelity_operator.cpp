#include <string>

#include "orthoclone/cloneropt.hpp"
#include "orthoclone/symspace.hpp"

namespace orthoclone::cloneropt {

ComplexVector orthogonal_pair(const su2kit::BlochAngles& angles) {
  const ComplexMatrix d = su2kit::bloch_matrix(angles);
  ComplexVector c(4);
  for (int h = 0; h < 4; ++h) {
    const auto [i, j] = kInputBasis[h];
    c[h] = d(i, 0) * d(j, 1);
  }
  return c;
}

FidelityOperator build_A(int M) {
  if (M < 1 || M > kMaxOperatorM) {
    throw SizeError("build_A: M = " + std::to_string(M) + " outside [1, " +
                    std::to_string(kMaxOperatorM) + "]");
  }
  using su2kit::bloch_element;

  // moments[n][np][h][hp] = Haar average of
  //   d_{n0} d*_{n'0} d_{i0} d_{j1} d*_{i'0} d*_{j'1}.
  Complex moments[2][2][4][4];
  for (int n = 0; n < 2; ++n)
    for (int np = 0; np < 2; ++np)
      for (int h = 0; h < 4; ++h)
        for (int hp = 0; hp < 4; ++hp) {
          const auto [i, j] = kInputBasis[h];
          const auto [ip, jp] = kInputBasis[hp];
          const su2kit::TrigMonomial mono =
              bloch_element(n, 0) * bloch_element(np, 0).conj() *
              bloch_element(i, 0) * bloch_element(j, 1) *
              bloch_element(ip, 0).conj() * bloch_element(jp, 1).conj();
          moments[n][np][h][hp] = su2kit::haar_average(mono);
        }

  const int K = M + 1;
  FidelityOperator a{M, ComplexMatrix::Zero(4 * K, 4 * K)};
  for (int k = 0; k < K; ++k) {
    for (int kp = 0; kp < K; ++kp) {
      if (std::abs(k - kp) > 1) continue;
      // <n'| Tr_1[|M,k><M,k'|] |n>
      const ComplexMatrix r = symspace::reduced_qubit(M, k, kp);
      for (int h = 0; h < 4; ++h)
        for (int hp = 0; hp < 4; ++hp) {
          Complex sum{0.0, 0.0};
          for (int n = 0; n < 2; ++n)
            for (int np = 0; np < 2; ++np)
              sum += r(np, n) * moments[n][np][h][hp];
          a.matrix(h * K + k, hp * K + kp) = sum;
        }
    }
  }
  return a;
}

}  // namespace orthoclone::cloneropt
