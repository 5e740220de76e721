#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace becdimer {

template <typename Scalar>
struct Types {
  using Real = Scalar;
  using Complex = std::complex<Scalar>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
  using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
};

using TypesD = Types<double>;
using Complex = TypesD::Complex;

/// Amplitudes c_n over the Fock basis |n, N-n>, n = 0..N (n atoms in mode 1).
using StateVector = TypesD::ComplexVector;

/// Vector on the Bloch sphere: (s_x, s_y, s_z) = <J>/(N/2) for a coherent state.
using BlochVector = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Sign of the relative phase in the coherent-state expansion
/// c_n ~ a^n (|b| e^{i sigma phi})^{N-n}. Fixed so that U=0 Ehrenfest motion
/// agrees with the classical flow z' = -2J sqrt(1-z^2) sin(phi).
inline constexpr int kPhaseSign = +1;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (z outside [-1,1], N < 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Spin squeezing is undefined when the mean spin vanishes.
class NoMeanSpinError : public Error {
 public:
  using Error::Error;
};

class GridError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& message)
      : Error(message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Two-mode Bose-Hubbard parameters. J and U in s^-1 (hbar = 1).
class ModelParams {
 public:
  static ModelParams from_interaction(int particles, double tunneling, double interaction) {
    validate(particles, tunneling);
    return ModelParams(particles, tunneling, interaction,
                       interaction * particles / (2.0 * tunneling));
  }

  static ModelParams from_lambda(int particles, double tunneling, double lambda) {
    validate(particles, tunneling);
    return ModelParams(particles, tunneling, 2.0 * tunneling * lambda / particles, lambda);
  }

  int particles() const noexcept { return particles_; }
  double tunneling() const noexcept { return tunneling_; }
  double interaction() const noexcept { return interaction_; }
  /// Lambda = U N / (2 J).
  double lambda() const noexcept { return lambda_; }
  int dimension() const noexcept { return particles_ + 1; }

 private:
  ModelParams(int n, double j, double u, double lambda)
      : particles_(n), tunneling_(j), interaction_(u), lambda_(lambda) {}

  static void validate(int particles, double tunneling) {
    if (particles < 1) throw DomainError("particle number N must be >= 1");
    if (!(tunneling > 0.0)) throw DomainError("tunneling rate J must be > 0");
  }

  int particles_;
  double tunneling_;
  double interaction_;
  double lambda_;
};

}  // namespace becdimer
