#include <cmath>
#include <random>

#include <doctest.h>

#include "becdimer/quantum.hpp"
#include "oracles.hpp"

using namespace becdimer;

namespace {

StateVector random_state(int N, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  StateVector v(N + 1);
  for (int n = 0; n <= N; ++n) v(n) = Complex(g(rng), g(rng));
  return v.normalized();
}

double max_abs(const Eigen::VectorXcd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("hamiltonian matrix elements") {
  const auto h1 = build_hamiltonian(ModelParams::from_interaction(1, 10.0, 0.0));
  CHECK(h1.size() == 2);
  CHECK(h1.diagonal(0) == 0.0);
  CHECK(h1.diagonal(1) == 0.0);
  CHECK(h1.off_diagonal(0) == -10.0);

  const auto h2 = build_hamiltonian(ModelParams::from_interaction(2, 10.0, 1.0));
  CHECK(h2.diagonal(0) == doctest::Approx(1.0));
  CHECK(h2.diagonal(1) == doctest::Approx(0.0));
  CHECK(h2.diagonal(2) == doctest::Approx(1.0));
  CHECK(h2.off_diagonal(0) == doctest::Approx(-10.0 * std::sqrt(2.0)));
  CHECK(h2.off_diagonal(1) == doctest::Approx(-10.0 * std::sqrt(2.0)));

  for (int N : {1, 7, 40}) CHECK(build_hamiltonian(ModelParams::from_lambda(N, 10.0, 5.0)).size() == N + 1);

  const auto p = ModelParams::from_interaction(9, 3.0, 0.7);
  const Eigen::MatrixXcd dense = build_hamiltonian(p).dense().cast<Complex>();
  CHECK((dense - oracle::hamiltonian(9, 3.0, 0.7)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("parameter conversions") {
  const auto p = ModelParams::from_lambda(40, 10.0, 5.0);
  CHECK(p.interaction() == doctest::Approx(2.5));
  CHECK(ModelParams::from_interaction(40, 10.0, 2.5).lambda() == doctest::Approx(5.0));
  CHECK_THROWS_AS(ModelParams::from_lambda(0, 10.0, 1.0), DomainError);
  CHECK_THROWS_AS(ModelParams::from_lambda(4, 0.0, 1.0), DomainError);
}

TEST_CASE("spectrum") {
  const Spectrum s1 = diagonalize(ModelParams::from_interaction(1, 10.0, 0.0));
  CHECK(s1.energies(0) == doctest::Approx(-10.0));
  CHECK(s1.energies(1) == doctest::Approx(10.0));

  const Spectrum s8 = diagonalize(ModelParams::from_interaction(8, 10.0, 0.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> brute(oracle::hamiltonian(8, 10.0, 0.0));
  for (int k = 0; k <= 8; ++k) {
    CHECK(std::abs(s8.energies(k) - (-80.0 + 20.0 * k)) < 1e-11);
    CHECK(std::abs(s8.energies(k) - brute.eigenvalues()(k)) < 1e-11);
  }

  const auto p = ModelParams::from_lambda(40, 10.0, 5.0);
  const auto h = build_hamiltonian(p);
  const Spectrum s = diagonalize(h);
  const Eigen::MatrixXd dense = h.dense();
  const double emax = s.energies.cwiseAbs().maxCoeff();
  const Eigen::MatrixXd residual = dense * s.eigenvectors - s.eigenvectors * s.energies.asDiagonal();
  for (int k = 0; k <= 40; ++k) CHECK(residual.col(k).norm() < 1e-10 * emax);
  CHECK((s.eigenvectors.transpose() * s.eigenvectors - Eigen::MatrixXd::Identity(41, 41)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("coherent state construction") {
  const StateVector top = coherent_state(40, 1.3, 1.0);
  CHECK(std::abs(std::abs(top(40)) - 1.0) < 1e-15);
  CHECK(top.head(40).norm() < 1e-15);

  const StateVector eq = coherent_state(40, 0.0, 0.0);
  for (int n = 0; n <= 40; ++n) {
    CHECK(std::abs(eq(n) - Complex(std::sqrt(oracle::binomial(40, n)) / std::pow(2.0, 20), 0.0)) < 1e-14);
  }
  CHECK(std::abs(eq.norm() - 1.0) < 1e-12);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uphi(0.0, kTwoPi), uz(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double phi = uphi(rng), z = uz(rng);
    const StateVector c = coherent_state(40, phi, z);
    CHECK(max_abs(c - oracle::coherent(40, phi, z)) < 1e-13);
    CHECK(std::abs(c.norm() - 1.0) < 1e-12);
    CHECK(std::abs(spdm(c)(0, 0).real() - (1.0 + z) / 2.0) < 1e-12);
    CHECK(std::abs(condensate_fraction(spdm(c)) - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(coherent_state(40, 0.0, 1.0000001), DomainError);
  CHECK_THROWS_AS(coherent_state(40, 0.0, -1.5), DomainError);
}

TEST_CASE("Rabi oscillation of a number state") {
  const auto p = ModelParams::from_interaction(40, 10.0, 0.0);
  const Spectrum s = diagonalize(p);
  const StateVector psi0 = fock_state(40, 40);
  CHECK(max_abs(evolve(psi0, 0.0, s) - psi0) < 1e-14);
  for (int k = 0; k <= 100; ++k) {
    const double t = 0.01 * k;
    const StateVector psi = evolve(psi0, t, s);
    const double z = spin_moments(psi).mean.z() / 20.0;
    CHECK(std::abs(z - std::cos(20.0 * t)) < 1e-10);
  }
  const StateVector back = evolve(psi0, kPi / 10.0, s);
  CHECK(std::abs(std::abs(back(40)) - 1.0) < 1e-10);
}

TEST_CASE("spectral propagation against dense matrix exponential") {
  const auto p = ModelParams::from_interaction(8, 10.0, 1.7);
  const Spectrum s = diagonalize(p);
  const Eigen::MatrixXcd H = oracle::hamiltonian(8, 10.0, 1.7);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ut(0.0, 3.0);
  for (int k = 0; k < 20; ++k) {
    const StateVector psi = random_state(8, rng);
    const double t = ut(rng);
    CHECK(max_abs(evolve(psi, t, s) - oracle::expm_minus_i(H, t) * psi) < 1e-10);
  }
}

TEST_CASE("unitarity, energy conservation and composition") {
  const auto p = ModelParams::from_lambda(40, 10.0, 5.0);
  const auto h = build_hamiltonian(p);
  const Spectrum s = diagonalize(h);
  const double emax = s.energies.cwiseAbs().maxCoeff();
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ut(0.0, 10.0);
  for (int k = 0; k < 10000; ++k) {
    const StateVector psi = random_state(40, rng);
    const double t = ut(rng);
    const StateVector out = evolve(psi, t, s);
    CHECK(std::abs(out.norm() - 1.0) < 1e-12);
    CHECK(std::abs(expectation_energy(out, h) - expectation_energy(psi, h)) < 1e-10 * emax);
  }
  for (int k = 0; k < 50; ++k) {
    const StateVector psi = random_state(40, rng);
    const double t1 = ut(rng), t2 = ut(rng);
    CHECK(max_abs(evolve(evolve(psi, t1, s), t2, s) - evolve(psi, t1 + t2, s)) < 1e-10);
  }
  CHECK_THROWS_AS(evolve(StateVector::Zero(5), 1.0, s), DimensionMismatch);
}

TEST_CASE("single-particle density matrix") {
  const StateVector fock = fock_state(40, 20);
  const Spdm rf = spdm(fock);
  CHECK(std::abs(rf(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(rf(1, 1) - 0.5) < 1e-15);
  CHECK(std::abs(rf(0, 1)) == 0.0);
  CHECK(condensate_fraction(rf) == doctest::Approx(0.5));

  StateVector noon = StateVector::Zero(41);
  noon(0) = noon(40) = 1.0 / std::sqrt(2.0);
  const Spdm rn = spdm(noon);
  CHECK(std::abs(rn(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(rn(0, 1)) < 1e-15);

  Spdm diag = Spdm::Zero();
  diag(0, 0) = 0.7;
  diag(1, 1) = 0.3;
  CHECK(condensate_fraction(diag) == doctest::Approx(0.7));

  std::mt19937_64 rng(31);
  for (int k = 0; k < 200; ++k) {
    const StateVector psi = random_state(40, rng);
    const Spdm r = spdm(psi);
    CHECK((r - r.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(r.trace() - 1.0) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(r);
    CHECK(es.eigenvalues()(0) >= -1e-12);
    CHECK(es.eigenvalues()(1) <= 1.0 + 1e-12);
    const double c = condensate_fraction(r);
    CHECK(std::abs(c - oracle::condensate_fraction(psi)) < 1e-12);
    CHECK(c >= 0.5);
    CHECK(c <= 1.0 + 1e-12);
  }
}

TEST_CASE("EPR entanglement and its semiclassical counterpart") {
  for (int n : {0, 7, 20, 40}) CHECK(epr_entanglement(fock_state(40, n)) == doctest::Approx(-n * (40.0 - n)));
  for (double z : {0.0, 0.2, -0.5, 0.93}) {
    for (double phi : {0.0, 1.0, 4.0}) {
      const StateVector c = coherent_state(40, phi, z);
      CHECK(std::abs(epr_entanglement(c) - 40.0 * (1.0 - z * z) / 4.0) < 1e-11);
      CHECK(std::abs(oracle::epr(c) - 40.0 * (1.0 - z * z) / 4.0) < 1e-10);
    }
  }
  CHECK(entanglement_semiclassical(1.0, 40) == 0.0);
  CHECK(entanglement_semiclassical(0.5, 40) == doctest::Approx(-400.0));

  const auto p = ModelParams::from_lambda(40, 10.0, 5.0);
  const Spectrum s = diagonalize(p);
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> uphi(0.0, kTwoPi), uz(-1.0, 1.0), ut(0.0, 3.0);
  for (int k = 0; k < 300; ++k) {
    const StateVector psi = evolve(coherent_state(40, uphi(rng), uz(rng)), ut(rng), s);
    const double esc = entanglement_semiclassical(condensate_fraction(spdm(psi)), 40);
    const double n1 = oracle::expect(oracle::number1(40), psi);
    const double direct = std::norm(psi.dot(oracle::annihilate_pair_hop(40) * psi)) - n1 * (40.0 - n1);
    CHECK(std::abs(esc - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
    CHECK(esc <= 0.0);
    CHECK(std::abs(epr_entanglement(psi) - oracle::epr(psi)) < 1e-9);
  }
}

TEST_CASE("spin moments against dense operators") {
  std::mt19937_64 rng(41);
  const auto J = oracle::spin_matrices(6);
  for (int k = 0; k < 20; ++k) {
    const StateVector psi = random_state(6, rng);
    const SpinMoments m = spin_moments(psi);
    const oracle::Mat* ops[3] = {&J.x, &J.y, &J.z};
    for (int a = 0; a < 3; ++a) {
      CHECK(std::abs(m.mean(a) - oracle::expect(*ops[a], psi)) < 1e-12);
      for (int b = 0; b < 3; ++b) {
        const oracle::Mat sym = 0.5 * (*ops[a] * *ops[b] + *ops[b] * *ops[a]);
        const double cov = oracle::expect(sym, psi) - oracle::expect(*ops[a], psi) * oracle::expect(*ops[b], psi);
        CHECK(std::abs(m.covariance(a, b) - cov) < 1e-12);
      }
    }
    CHECK(max_abs(apply_jx(psi) - J.x * psi) < 1e-13);
    CHECK(max_abs(apply_jy(psi) - J.y * psi) < 1e-13);
    CHECK(max_abs(apply_jz(psi) - J.z * psi) < 1e-13);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m.covariance);
    CHECK(es.eigenvalues()(0) > -1e-12);
    CHECK(m.mean.norm() <= 3.0 + 1e-12);
  }
  for (double z : {-0.7, 0.0, 0.4}) {
    const SpinMoments m = spin_moments(coherent_state(40, 0.0, z));
    CHECK(std::abs(m.mean.z() - 20.0 * z) < 1e-12);
    CHECK(std::abs(m.mean.norm() - 20.0) < 1e-12);
  }
  const SpinMoments f = spin_moments(fock_state(40, 13));
  CHECK(std::abs(f.mean.x()) < 1e-15);
  CHECK(std::abs(f.mean.y()) < 1e-15);
  CHECK(f.mean.z() == doctest::Approx(13.0 - 20.0));
}

TEST_CASE("spin squeezing") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> uphi(0.0, kTwoPi), uz(-0.999, 0.999);
  for (int k = 0; k < 100; ++k) {
    const StateVector c = coherent_state(40, uphi(rng), uz(rng));
    CHECK(std::abs(squeezing_xi2(spin_moments(c), 40) - 1.0) < 1e-10);
  }
  CHECK_THROWS_AS(squeezing_xi2(spin_moments(fock_state(40, 20)), 40), NoMeanSpinError);

  const auto p = ModelParams::from_lambda(20, 10.0, 5.0);
  const Spectrum s = diagonalize(p);
  for (double t : {0.05, 0.3, 1.1}) {
    const StateVector psi = evolve(coherent_state(20, 0.3, 0.1), t, s);
    CHECK(std::abs(squeezing_xi2(spin_moments(psi), 20) - oracle::squeezing(psi)) < 1e-9);
  }
}

TEST_CASE("phase sign reproduces the classical sense of rotation") {
  const auto p = ModelParams::from_interaction(40, 10.0, 0.0);
  const Spectrum s = diagonalize(p);
  const StateVector psi = evolve(coherent_state(40, 0.5, 0.0), 1e-3, s);
  CHECK(spin_moments(psi).mean.z() < 0.0);
}

TEST_CASE("non-interacting Ehrenfest motion is a rigid Bloch rotation") {
  const auto p = ModelParams::from_interaction(40, 10.0, 0.0);
  const Spectrum s = diagonalize(p);
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> uphi(0.0, kTwoPi), uz(-1.0, 1.0), ut(0.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    const StateVector psi0 = coherent_state(40, uphi(rng), uz(rng));
    const Eigen::Vector3d s0 = spin_moments(psi0).mean / 20.0;
    const double t = ut(rng);
    const Eigen::Vector3d st = spin_moments(evolve(psi0, t, s)).mean / 20.0;
    // H = -2J Jx: rotation about +x by angle -2Jt.
    const Eigen::Vector3d expected = Eigen::AngleAxisd(-20.0 * t, Eigen::Vector3d::UnitX()) * s0;
    CHECK((st - expected).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("Husimi function") {
  const StateVector c = coherent_state(40, 1.1, 0.3);
  CHECK(std::abs(husimi_q(c, 1.1, 0.3) - 1.0) < 1e-12);
  CHECK(husimi_q(c, 1.1 + kPi, -0.3) < 1e-12);

  // Gauss-Legendre in z, uniform (spectrally exact) in phi.
  const int nodes = 64;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int i = 1; i < nodes; ++i) jacobi(i, i - 1) = jacobi(i - 1, i) = i / std::sqrt(4.0 * i * i - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gl(jacobi);
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 3; ++trial) {
    const StateVector psi = random_state(40, rng);
    const int nphi = 96;
    double integral = 0.0;
    for (int i = 0; i < nodes; ++i) {
      const double z = gl.eigenvalues()(i);
      const double w = 2.0 * gl.eigenvectors()(0, i) * gl.eigenvectors()(0, i);
      for (int k = 0; k < nphi; ++k) integral += w * (kTwoPi / nphi) * husimi_q(psi, kTwoPi * k / nphi, z);
    }
    CHECK(std::abs(41.0 / (4.0 * kPi) * integral - 1.0) < 1e-6);
  }
}

TEST_CASE("maximum overlap with stationary states") {
  const Spectrum free = diagonalize(ModelParams::from_interaction(40, 10.0, 0.0));
  CHECK(std::abs(max_overlap(0.0, 0.0, free) - 1.0) < 1e-12);
  const Spectrum s = diagonalize(ModelParams::from_lambda(40, 10.0, 1.5));
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> uphi(0.0, kTwoPi), uz(-1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double a = max_overlap(uphi(rng), uz(rng), s);
    CHECK(a <= 1.0 + 1e-12);
    CHECK(a > 0.0);
  }
}

TEST_CASE("relabel symmetry of coherent states") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> uphi(0.0, kTwoPi), uz(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const double phi = uphi(rng), z = uz(rng);
    const StateVector a = coherent_state(40, phi, z);
    const StateVector b = coherent_state(40, -phi, -z);
    CHECK(std::abs(std::abs(a.dot(b.reverse())) - 1.0) < 1e-12);
  }
}
