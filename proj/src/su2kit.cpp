#include "orthoclone/su2kit.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "orthoclone/errors.hpp"

namespace orthoclone::su2kit {

BlochAngles BlochAngles::normalized() const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0) t += two_pi;
  double p = phi;
  // theta in (pi, 2pi) is the same direction as (2pi - theta, phi + pi).
  if (t > std::numbers::pi) {
    t = two_pi - t;
    p += std::numbers::pi;
  }
  p = std::fmod(p, two_pi);
  if (p < 0) p += two_pi;
  if (p >= two_pi) p = 0.0;
  return {t, p};
}

ComplexMatrix bloch_matrix(const BlochAngles& angles) {
  const double c = std::cos(angles.theta / 2);
  const double s = std::sin(angles.theta / 2);
  ComplexMatrix d(2, 2);
  d(0, 0) = c;
  d(0, 1) = std::polar(s, -angles.phi);
  d(1, 0) = std::polar(s, angles.phi);
  d(1, 1) = -c;
  return d;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    const std::uint64_t factor = n - k + i;
    if (result > std::numeric_limits<std::uint64_t>::max() / factor) {
      throw SizeError("binomial(" + std::to_string(n) + ", " +
                      std::to_string(k) + ") overflows 64 bits");
    }
    result = result * factor / i;
  }
  return result;
}

double haar_monomial(unsigned p, unsigned q, int m) {
  if (m != 0) return 0.0;
  // p! q! / (p+q+1)! = 1 / ((p+q+1) C(p+q, p))
  const double denom = static_cast<double>(p + q + 1) *
                       static_cast<double>(binomial(p + q, p));
  return 1.0 / denom;
}

TrigMonomial TrigMonomial::operator*(const TrigMonomial& other) const {
  return {coef * other.coef, cos_power + other.cos_power,
          sin_power + other.sin_power, phase + other.phase};
}

TrigMonomial TrigMonomial::conj() const {
  return {std::conj(coef), cos_power, sin_power, -phase};
}

TrigMonomial bloch_element(int row, int col) {
  if (row == 0 && col == 0) return {{1.0, 0.0}, 1, 0, 0};
  if (row == 0 && col == 1) return {{1.0, 0.0}, 0, 1, -1};
  if (row == 1 && col == 0) return {{1.0, 0.0}, 0, 1, 1};
  if (row == 1 && col == 1) return {{-1.0, 0.0}, 1, 0, 0};
  throw ContractViolation("bloch_element: index out of range");
}

Complex haar_average(const TrigMonomial& mono) {
  if (mono.phase != 0) return {0.0, 0.0};
  if (mono.cos_power % 2 != 0 || mono.sin_power % 2 != 0) {
    // Unreachable for products of d-matrix entries (parity of sin powers
    // matches the phase winding), but the integrand is not a Beta moment.
    throw ContractViolation("haar_average: odd power with zero phase winding");
  }
  return mono.coef * haar_monomial(static_cast<unsigned>(mono.cos_power / 2),
                                   static_cast<unsigned>(mono.sin_power / 2), 0);
}

double WignerD::at(int k, int j) const {
  if (k < 0 || k > M || j < 0 || j > M) return 0.0;
  return entries(k, j);
}

WignerD wigner_bigD(int M, double theta) {
  if (M < 1 || M > kMaxWignerM) {
    throw SizeError("wigner_bigD: M = " + std::to_string(M) +
                    " outside [1, " + std::to_string(kMaxWignerM) + "]");
  }
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  // phi = 0: psi = (c, s), psi_perp = (s, -c).
  const double psi[2] = {c, s};
  const double perp[2] = {s, -c};

  WignerD out{M, theta, Eigen::MatrixXd::Zero(M + 1, M + 1)};
  std::vector<double> poly;
  for (int k = 0; k <= M; ++k) {
    // Amplitude of the symmetrized product on the string 0^k 1^(M-k): the
    // coefficient of t^j in prod_pos (psi[x_pos] t + perp[x_pos]) sums over
    // every placement of the j factors of psi.
    poly.assign(1, 1.0);
    for (int pos = 0; pos < M; ++pos) {
      const int bit = pos < k ? 0 : 1;
      std::vector<double> next(poly.size() + 1, 0.0);
      for (std::size_t d = 0; d < poly.size(); ++d) {
        next[d] += poly[d] * perp[bit];
        next[d + 1] += poly[d] * psi[bit];
      }
      poly.swap(next);
    }
    const double ck = static_cast<double>(binomial(M, k));
    for (int j = 0; j <= M; ++j) {
      const double cj = static_cast<double>(binomial(M, j));
      // <M,k| projects with weight sqrt(C(M,k)); the symmetrized state carries
      // 1/sqrt(C(M,j)).
      out.entries(k, j) = poly[j] * std::sqrt(ck / cj);
    }
  }
  return out;
}

double recurrence_residual(const WignerD& d, int k, int j) {
  if (k < 0 || k > d.M || j < 0 || j > d.M) {
    throw SizeError("recurrence_residual: index (" + std::to_string(k) + ", " +
                    std::to_string(j) + ") outside [0, " + std::to_string(d.M) +
                    "]");
  }
  const int M = d.M;
  const double ct = std::cos(d.theta);
  const double st = std::sin(d.theta);
  const double lhs = (2.0 * j - M) * d.at(k, j);
  const double rhs = (2.0 * k - M) * ct * d.at(k, j) +
                     st * std::sqrt(double(k + 1) * (M - k)) * d.at(k + 1, j) +
                     st * std::sqrt(double(k) * (M - k + 1)) * d.at(k - 1, j);
  return std::abs(lhs - rhs);
}

ComplexMatrix spin_flip() {
  ComplexMatrix u = ComplexMatrix::Zero(2, 2);
  u(1, 0) = 1.0;
  u(0, 1) = -1.0;
  return u;
}

}  // namespace orthoclone::su2kit
