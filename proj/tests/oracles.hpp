#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls the code path it is used to check.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/trapezoidal.hpp>

#include "orthoclone/matcore.hpp"

namespace oracle {

using Complex = std::complex<double>;
using orthoclone::matcore::ComplexMatrix;
using orthoclone::matcore::ComplexVector;

inline std::uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// |M,k> over 2^M strings by enumeration, qubit 0 most significant.
inline std::vector<double> dicke_bruteforce(int M, int k) {
  const int dim = 1 << M;
  std::vector<double> v(dim, 0.0);
  int count = 0;
  for (int x = 0; x < dim; ++x) {
    int zeros = 0;
    for (int b = 0; b < M; ++b) zeros += ((x >> b) & 1) == 0;
    if (zeros == k) {
      v[x] = 1.0;
      ++count;
    }
  }
  for (double& a : v) a /= std::sqrt(static_cast<double>(count));
  return v;
}

/// <x| Tr_{qubits 1..M-1}[|u><w|] |y> for vectors over 2^M strings.
inline ComplexMatrix keep_first_qubit(int M, const std::vector<Complex>& u,
                                      const std::vector<Complex>& w) {
  const int rest = 1 << (M - 1);
  ComplexMatrix r = ComplexMatrix::Zero(2, 2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int t = 0; t < rest; ++t)
        r(x, y) += u[x * rest + t] * std::conj(w[y * rest + t]);
  return r;
}

inline std::vector<Complex> to_complex(const std::vector<double>& v) {
  return {v.begin(), v.end()};
}

/// Normalized symmetrization of a^{(x)j} (x) b^{(x)(M-j)} over 2^M strings,
/// summing every placement of the j copies of a explicitly.
inline std::vector<Complex> symmetrized_product(int M, int j, const Complex a[2],
                                                const Complex b[2]) {
  const int dim = 1 << M;
  std::vector<Complex> v(dim, 0.0);
  for (int mask = 0; mask < dim; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) != j) continue;
    for (int x = 0; x < dim; ++x) {
      Complex amp = 1.0;
      for (int pos = 0; pos < M; ++pos) {
        const int bit = (x >> (M - 1 - pos)) & 1;
        amp *= ((mask >> pos) & 1) ? a[bit] : b[bit];
      }
      v[x] += amp;
    }
  }
  const double norm = std::sqrt(static_cast<double>(choose(M, j)));
  for (auto& c : v) c /= norm;
  return v;
}

/// Dicke-basis coefficients <M,k|v> of a vector over 2^M strings.
inline ComplexVector project_dicke(int M, const std::vector<Complex>& v) {
  ComplexVector out(M + 1);
  for (int k = 0; k <= M; ++k) {
    const auto d = dicke_bruteforce(M, k);
    Complex s = 0.0;
    for (std::size_t x = 0; x < v.size(); ++x) s += d[x] * v[x];
    out[k] = s;
  }
  return out;
}

/// (1/4pi) Int cos^{2p}(t/2) sin^{2q}(t/2) e^{i m phi} sin t dt dphi by nested
/// adaptive quadrature (Gauss-Kronrod in theta, trapezoid in phi).
inline Complex haar_quadrature(int p, int q, int m) {
  using boost::math::quadrature::gauss_kronrod;
  using boost::math::quadrature::trapezoidal;
  const double two_pi = 2.0 * std::numbers::pi;
  auto phase_integral = [&](bool imag) {
    auto f = [&](double phi) { return imag ? std::sin(m * phi) : std::cos(m * phi); };
    return trapezoidal(f, 0.0, two_pi, 1e-14);
  };
  const double re_phi = phase_integral(false);
  const double im_phi = phase_integral(true);
  auto radial = [&](double t) {
    return std::pow(std::cos(t / 2), 2 * p) * std::pow(std::sin(t / 2), 2 * q) *
           std::sin(t);
  };
  const double r = gauss_kronrod<double, 61>::integrate(radial, 0.0, std::numbers::pi, 15, 1e-15);
  return Complex(r * re_phi, r * im_phi) / (4.0 * std::numbers::pi);
}

/// Independent evaluation of the N + 1 orthogonal-input fidelity with the
/// polynomial P expanded in powers of M and long double arithmetic.
inline double fidelity_perp_general_expanded(long long N, long long M) {
  const long double n = N, m = M;
  const long double p = n * n * n - 16 * n * n - 3 * n + 18 + 8 * (n + 1) * m * m +
                        8 * (n + 1) * (3 - n) * m;
  const long double num = 2 * m * (n + 1) + 3 * (n - 1) + std::sqrt(p / (n + 2));
  return static_cast<double>(num / (2 * m * (n + 3)));
}

/// Uniform point on the sphere.
struct SphereSampler {
  std::mt19937_64 rng;
  explicit SphereSampler(std::uint64_t seed) : rng(seed) {}
  std::pair<double, double> operator()() {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
    return {std::acos(u(rng)), ph(rng)};
  }
};

}  // namespace oracle
