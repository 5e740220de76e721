#pragma once

// Reference computations built only from dense Eigen algebra and textbook
// formulas, sharing no code with the library.

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

inline double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// Basis index n = atoms in mode 1.
inline Mat annihilate_pair_hop(int N) {
  // a1^dag a2 : |n, N-n> -> sqrt((n+1)(N-n)) |n+1, N-n-1>
  Mat m = Mat::Zero(N + 1, N + 1);
  for (int n = 0; n < N; ++n) m(n + 1, n) = std::sqrt((n + 1.0) * (N - n));
  return m;
}

inline Mat number1(int N) {
  Mat m = Mat::Zero(N + 1, N + 1);
  for (int n = 0; n <= N; ++n) m(n, n) = n;
  return m;
}

inline Mat number2(int N) {
  Mat m = Mat::Zero(N + 1, N + 1);
  for (int n = 0; n <= N; ++n) m(n, n) = N - n;
  return m;
}

// H = -J (a1^dag a2 + a2^dag a1) + U/2 (n1(n1-1) + n2(n2-1))
inline Mat hamiltonian(int N, double J, double U) {
  const Mat hop = annihilate_pair_hop(N);
  const Mat n1 = number1(N);
  const Mat n2 = number2(N);
  const Mat id = Mat::Identity(N + 1, N + 1);
  return -J * (hop + hop.adjoint()) + 0.5 * U * (n1 * (n1 - id) + n2 * (n2 - id));
}

struct Spins {
  Mat x, y, z;
};

inline Spins spin_matrices(int N) {
  const Mat hop = annihilate_pair_hop(N);  // a1^dag a2
  Spins s;
  s.x = 0.5 * (hop + hop.adjoint());
  s.y = cd(0, 0.5) * (hop.adjoint() - hop);
  s.z = 0.5 * (number1(N) - number2(N));
  return s;
}

// exp(-i H t) by scaling and squaring of a long Taylor series.
inline Mat expm_minus_i(const Mat& H, double t) {
  Mat A = cd(0, -t) * H;
  const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
  A /= std::pow(2.0, squarings);
  Mat term = Mat::Identity(H.rows(), H.cols());
  Mat sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = (term * A) / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// All N atoms in the orbital sqrt((1+z)/2)|1> + sqrt((1-z)/2) e^{i phi}|2>.
inline Vec coherent(int N, double phi, double z) {
  const double a = std::sqrt((1.0 + z) / 2.0);
  const cd b = std::sqrt((1.0 - z) / 2.0) * std::exp(cd(0, phi));
  Vec v(N + 1);
  for (int n = 0; n <= N; ++n) v(n) = std::sqrt(binomial(N, n)) * std::pow(a, n) * std::pow(b, N - n);
  return v;
}

inline double expect(const Mat& op, const Vec& psi) { return psi.dot(op * psi).real(); }

// Largest eigenvalue of the 2x2 single-particle density matrix.
inline double condensate_fraction(const Vec& psi) {
  const int N = static_cast<int>(psi.size()) - 1;
  const Mat hop = annihilate_pair_hop(N);
  Eigen::Matrix2cd rho;
  rho(0, 0) = expect(number1(N), psi);
  rho(1, 1) = expect(number2(N), psi);
  rho(0, 1) = psi.dot(hop * psi);  // <a1^dag a2>
  rho(1, 0) = std::conj(rho(0, 1));
  rho /= N;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
  return es.eigenvalues()(1);
}

inline double epr(const Vec& psi) {
  const int N = static_cast<int>(psi.size()) - 1;
  const cd h = psi.dot(annihilate_pair_hop(N) * psi);
  return std::norm(h) - expect(number1(N) * number2(N), psi);
}

// xi^2 = N min_{n perp <J>} Var(n.J) / |<J>|^2 by brute-force angle search
// refined with a golden-section step.
inline double squeezing(const Vec& psi) {
  const int N = static_cast<int>(psi.size()) - 1;
  const Spins s = spin_matrices(N);
  const Eigen::Vector3d mean(expect(s.x, psi), expect(s.y, psi), expect(s.z, psi));
  Eigen::Vector3d e3 = mean.normalized();
  Eigen::Vector3d trial = std::abs(e3.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  Eigen::Vector3d e1 = (trial - trial.dot(e3) * e3).normalized();
  Eigen::Vector3d e2 = e3.cross(e1);
  auto variance = [&](double angle) {
    const Eigen::Vector3d n = std::cos(angle) * e1 + std::sin(angle) * e2;
    const Mat op = n.x() * s.x + n.y() * s.y + n.z() * s.z;
    const double m = expect(op, psi);
    return expect(op * op, psi) - m * m;
  };
  const int coarse = 720;
  int best = 0;
  double best_v = variance(0.0);
  for (int k = 1; k < coarse; ++k) {
    const double v = variance(kPi * k / coarse);
    if (v < best_v) {
      best_v = v;
      best = k;
    }
  }
  double lo = kPi * (best - 1) / coarse;
  double hi = kPi * (best + 1) / coarse;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 100; ++it) {
    const double a = hi - g * (hi - lo);
    const double b = lo + g * (hi - lo);
    if (variance(a) < variance(b)) hi = b; else lo = a;
  }
  return N * variance(0.5 * (lo + hi)) / mean.squaredNorm();
}

}  // namespace oracle
