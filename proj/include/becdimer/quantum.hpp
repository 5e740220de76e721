#pragma once

#include "becdimer/tridiagonal.hpp"
#include "becdimer/types.hpp"

namespace becdimer {

/// Two-mode Bose-Hubbard Hamiltonian in the Fock basis |n, N-n>:
///   H_nn     = (U/2) [n(n-1) + (N-n)(N-n-1)]
///   H_n,n+1  = -J sqrt((n+1)(N-n))
template <typename Scalar = double>
SymmetricTridiagonal<Scalar> build_hamiltonian(const ModelParams& params) {
  const int n_particles = params.particles();
  const Scalar j = static_cast<Scalar>(params.tunneling());
  const Scalar u = static_cast<Scalar>(params.interaction());
  SymmetricTridiagonal<Scalar> h;
  h.diagonal.resize(n_particles + 1);
  h.off_diagonal.resize(n_particles);
  for (int n = 0; n <= n_particles; ++n) {
    const Scalar n1 = n;
    const Scalar n2 = n_particles - n;
    h.diagonal(n) = u / 2 * (n1 * (n1 - 1) + n2 * (n2 - 1));
    if (n < n_particles) h.off_diagonal(n) = -j * std::sqrt((n1 + 1) * n2);
  }
  return h;
}

/// Eigenvalues (ascending, s^-1) and orthonormal real eigenvectors.
struct Spectrum {
  Eigen::VectorXd energies;
  Eigen::MatrixXd eigenvectors;

  int particles() const { return static_cast<int>(energies.size()) - 1; }
};

Spectrum diagonalize(const SymmetricTridiagonal<double>& hamiltonian, const QlOptions& options = {});
inline Spectrum diagonalize(const ModelParams& params) { return diagonalize(build_hamiltonian(params)); }

/// Atomic coherent state |phi, z>: c_n = sqrt(C(N,n)) a^n b^(N-n),
/// a = sqrt((1+z)/2), b = sqrt((1-z)/2) e^{i sigma phi}.
StateVector coherent_state(int particles, double phi, double z);

/// |n, N-n>.
StateVector fock_state(int particles, int n);

/// Spectral propagation psi(t) = sum_k e^{-i E_k t} <v_k|psi> v_k.
StateVector evolve(const StateVector& psi, double t, const Spectrum& spectrum);

/// Coefficients of psi in the eigenbasis; with `evolve_from_projection` this
/// avoids re-projecting the same initial state for many times.
Eigen::VectorXcd project_onto_eigenbasis(const StateVector& psi, const Spectrum& spectrum);
StateVector evolve_from_projection(const Eigen::VectorXcd& projection, double t, const Spectrum& spectrum);

double expectation_energy(const StateVector& psi, const SymmetricTridiagonal<double>& hamiltonian);

/// Reduced single-particle density matrix rho_ij = <a_i^dag a_j>/N.
using Spdm = Eigen::Matrix2cd;

/// <a_1^dag a_2> = sum_n conj(c_{n+1}) c_n sqrt((n+1)(N-n)).
Complex hopping_expectation(const StateVector& psi);

Spdm spdm(const StateVector& psi);

/// Largest eigenvalue of a unit-trace 2x2 Hermitian matrix, in [1/2, 1].
double condensate_fraction(const Spdm& rho);

/// E = |<a_1^dag a_2>|^2 - <a_1^dag a_1 a_2^dag a_2>; E > 0 witnesses EPR entanglement.
double epr_entanglement(const StateVector& psi);

/// E_sc = N^2 (c^2 - c), always <= 0.
double entanglement_semiclassical(double condensate_fraction, int particles);

struct SpinMoments {
  Eigen::Vector3d mean;
  /// Cov_ab = 1/2 <J_a J_b + J_b J_a> - <J_a><J_b>.
  Eigen::Matrix3d covariance;
};

/// J_x psi, J_y psi and J_z psi with J_x = (a2^dag a1 + a1^dag a2)/2,
/// J_y = i (a2^dag a1 - a1^dag a2)/2, J_z = (n1 - n2)/2.
StateVector apply_jx(const StateVector& psi);
StateVector apply_jy(const StateVector& psi);
StateVector apply_jz(const StateVector& psi);

SpinMoments spin_moments(const StateVector& psi);

/// Mean spins with |<J>| below this are treated as vanishing.
inline double mean_spin_threshold(int particles) { return 1e-9 * particles; }

/// Spectroscopic squeezing xi^2 = N (Delta J_perp,min)^2 / |<J>|^2, minimising
/// the variance over the plane orthogonal to the mean spin.
/// Throws NoMeanSpinError when |<J>| <= 1e-9 N.
double squeezing_xi2(const SpinMoments& moments, int particles);

/// Q(phi, z) = |<phi, z|psi>|^2.
double husimi_q(const StateVector& psi, double phi, double z);

/// A_max = max_k |<v_k|phi, z>|.
double max_overlap(double phi, double z, const Spectrum& spectrum);

}  // namespace becdimer
