#include "becdimer/quantum.hpp"

#include <cmath>
#include <string>

namespace becdimer {

namespace {

void require_normalizable(const StateVector& psi) {
  if (psi.size() < 2) throw DimensionMismatch("state vector needs at least two Fock components");
}

double ladder(int n, int particles) {
  return std::sqrt(static_cast<double>(n + 1) * static_cast<double>(particles - n));
}

}  // namespace

Spectrum diagonalize(const SymmetricTridiagonal<double>& hamiltonian, const QlOptions& options) {
  auto eig = is_mirror_symmetric(hamiltonian) ? mirror_symmetric_eigen(hamiltonian, options)
                                              : symmetric_tridiagonal_eigen(hamiltonian, options);
  return Spectrum{std::move(eig.eigenvalues), std::move(eig.eigenvectors)};
}

StateVector coherent_state(int particles, double phi, double z) {
  if (particles < 1) throw DomainError("coherent_state: N must be >= 1");
  if (!(z >= -1.0 && z <= 1.0)) {
    throw DomainError("coherent_state: imbalance z=" + std::to_string(z) + " outside [-1,1]");
  }
  if (!std::isfinite(phi)) throw DomainError("coherent_state: phase must be finite");

  const double log_a = std::log(std::sqrt((1.0 + z) / 2.0));
  const double log_b = std::log(std::sqrt((1.0 - z) / 2.0));
  StateVector psi(particles + 1);
  // log C(N, n) by the multiplicative recurrence.
  double log_binom = 0.0;
  for (int n = 0; n <= particles; ++n) {
    if (n > 0) log_binom += std::log(static_cast<double>(particles - n + 1) / n);
    const int m = particles - n;
    double log_mag = 0.5 * log_binom;
    if (n > 0) log_mag += n * log_a;
    if (m > 0) log_mag += m * log_b;
    const double mag = std::exp(log_mag);
    // m*phi split exactly into product and fma residual; remainder() is exact.
    const double product = phi * m;
    const double angle = std::remainder(product, kTwoPi) + std::fma(phi, m, -product);
    psi(n) = std::polar(mag, kPhaseSign * angle);
  }
  return psi;
}

StateVector fock_state(int particles, int n) {
  if (particles < 1 || n < 0 || n > particles) throw DomainError("fock_state: need 0 <= n <= N, N >= 1");
  StateVector psi = StateVector::Zero(particles + 1);
  psi(n) = 1.0;
  return psi;
}

Eigen::VectorXcd project_onto_eigenbasis(const StateVector& psi, const Spectrum& spectrum) {
  if (psi.size() != spectrum.energies.size()) {
    throw DimensionMismatch("state dimension " + std::to_string(psi.size()) + " does not match spectrum dimension " +
                            std::to_string(spectrum.energies.size()));
  }
  return spectrum.eigenvectors.transpose().cast<Complex>() * psi;
}

StateVector evolve_from_projection(const Eigen::VectorXcd& projection, double t, const Spectrum& spectrum) {
  if (projection.size() != spectrum.energies.size()) throw DimensionMismatch("projection/spectrum dimension mismatch");
  Eigen::VectorXcd phased(projection.size());
  for (Eigen::Index k = 0; k < projection.size(); ++k) {
    phased(k) = projection(k) * std::polar(1.0, -spectrum.energies(k) * t);
  }
  return spectrum.eigenvectors.cast<Complex>() * phased;
}

StateVector evolve(const StateVector& psi, double t, const Spectrum& spectrum) {
  return evolve_from_projection(project_onto_eigenbasis(psi, spectrum), t, spectrum);
}

double expectation_energy(const StateVector& psi, const SymmetricTridiagonal<double>& h) {
  if (psi.size() != h.size()) throw DimensionMismatch("state/Hamiltonian dimension mismatch");
  double e = 0.0;
  for (Eigen::Index n = 0; n < psi.size(); ++n) {
    e += h.diagonal(n) * std::norm(psi(n));
    if (n + 1 < psi.size()) e += 2.0 * h.off_diagonal(n) * std::real(std::conj(psi(n + 1)) * psi(n));
  }
  return e;
}

Complex hopping_expectation(const StateVector& psi) {
  require_normalizable(psi);
  const int particles = static_cast<int>(psi.size()) - 1;
  Complex sum = 0.0;
  for (int n = 0; n < particles; ++n) sum += std::conj(psi(n + 1)) * psi(n) * ladder(n, particles);
  return sum;
}

Spdm spdm(const StateVector& psi) {
  require_normalizable(psi);
  const int particles = static_cast<int>(psi.size()) - 1;
  double n1 = 0.0;
  for (int n = 0; n <= particles; ++n) n1 += std::norm(psi(n)) * n;
  const double rho11 = n1 / particles;
  const Complex rho12 = hopping_expectation(psi) / static_cast<double>(particles);
  Spdm rho;
  rho << rho11, rho12, std::conj(rho12), 1.0 - rho11;
  return rho;
}

double condensate_fraction(const Spdm& rho) {
  const double half_diff = std::real(rho(0, 0) - rho(1, 1)) / 2.0;
  return 0.5 + std::sqrt(half_diff * half_diff + std::norm(rho(0, 1)));
}

double epr_entanglement(const StateVector& psi) {
  require_normalizable(psi);
  const int particles = static_cast<int>(psi.size()) - 1;
  double n1n2 = 0.0;
  for (int n = 0; n <= particles; ++n) n1n2 += std::norm(psi(n)) * n * static_cast<double>(particles - n);
  return std::norm(hopping_expectation(psi)) - n1n2;
}

double entanglement_semiclassical(double c, int particles) {
  const double n = particles;
  return n * n * (c * c - c);
}

StateVector apply_jx(const StateVector& psi) {
  const int particles = static_cast<int>(psi.size()) - 1;
  StateVector out = StateVector::Zero(psi.size());
  for (int n = 0; n < particles; ++n) {
    const double k = 0.5 * ladder(n, particles);
    out(n + 1) += k * psi(n);  // a1^dag a2
    out(n) += k * psi(n + 1);  // a2^dag a1
  }
  return out;
}

StateVector apply_jy(const StateVector& psi) {
  const int particles = static_cast<int>(psi.size()) - 1;
  const Complex half_i(0.0, 0.5);
  StateVector out = StateVector::Zero(psi.size());
  for (int n = 0; n < particles; ++n) {
    const double k = ladder(n, particles);
    out(n + 1) -= half_i * k * psi(n);
    out(n) += half_i * k * psi(n + 1);
  }
  return out;
}

StateVector apply_jz(const StateVector& psi) {
  const int particles = static_cast<int>(psi.size()) - 1;
  StateVector out(psi.size());
  for (int n = 0; n <= particles; ++n) out(n) = (n - 0.5 * particles) * psi(n);
  return out;
}

SpinMoments spin_moments(const StateVector& psi) {
  require_normalizable(psi);
  const StateVector actions[3] = {apply_jx(psi), apply_jy(psi), apply_jz(psi)};
  SpinMoments m;
  for (int a = 0; a < 3; ++a) m.mean(a) = std::real(psi.dot(actions[a]));
  // J_a hermitian: <J_a J_b> = <J_a psi | J_b psi>; its real part is the symmetrised moment.
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      const double sym = std::real(actions[a].dot(actions[b]));
      m.covariance(a, b) = sym - m.mean(a) * m.mean(b);
      m.covariance(b, a) = m.covariance(a, b);
    }
  }
  return m;
}

double squeezing_xi2(const SpinMoments& moments, int particles) {
  const double length = moments.mean.norm();
  if (length <= mean_spin_threshold(particles)) {
    throw NoMeanSpinError("squeezing_xi2: no mean spin (|<J>| = " + std::to_string(length) + ")");
  }
  const Eigen::Vector3d axis = moments.mean / length;
  // Any vector not parallel to the axis seeds the orthogonal pair.
  Eigen::Index smallest;
  axis.cwiseAbs().minCoeff(&smallest);
  const Eigen::Vector3d seed = Eigen::Vector3d::Unit(smallest);
  const Eigen::Vector3d e1 = axis.cross(seed).normalized();
  const Eigen::Vector3d e2 = axis.cross(e1);
  Eigen::Matrix<double, 3, 2> basis;
  basis << e1, e2;
  const Eigen::Matrix2d restricted = basis.transpose() * moments.covariance * basis;
  // Smallest eigenvalue of a symmetric 2x2 matrix in closed form.
  const double mean_diag = 0.5 * (restricted(0, 0) + restricted(1, 1));
  const double half_gap = std::hypot(0.5 * (restricted(0, 0) - restricted(1, 1)), restricted(0, 1));
  const double min_variance = mean_diag - half_gap;
  return particles * min_variance / (length * length);
}

double husimi_q(const StateVector& psi, double phi, double z) {
  require_normalizable(psi);
  const StateVector probe = coherent_state(static_cast<int>(psi.size()) - 1, phi, z);
  return std::norm(probe.dot(psi));
}

double max_overlap(double phi, double z, const Spectrum& spectrum) {
  const StateVector probe = coherent_state(spectrum.particles(), phi, z);
  return project_onto_eigenbasis(probe, spectrum).cwiseAbs().maxCoeff();
}

}  // namespace becdimer
