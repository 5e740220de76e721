#pragma once

#include <optional>
#include <string>
#include <vector>

#include "becdimer/types.hpp"

namespace becdimer {

/// Relative phase phi (stored modulo 2 pi) and population imbalance z.
class PhasePoint {
 public:
  PhasePoint(double phi, double z);

  double phi() const noexcept { return phi_; }
  double z() const noexcept { return z_; }

 private:
  double phi_;
  double z_;
};

double wrap_phase(double phi);

/// (sqrt(1-z^2) cos phi, sigma sqrt(1-z^2) sin phi, z).
BlochVector to_bloch(const PhasePoint& p);
PhasePoint to_phase_point(const BlochVector& s);

/// H_cl = Lambda z^2 / 2 - sqrt(1 - z^2) cos(phi).
double h_cl(const PhasePoint& p, double lambda);
/// Same Hamiltonian on the sphere: Lambda s_z^2 / 2 - s_x.
double h_cl(const BlochVector& s, double lambda);

/// ds/dt = 2J (grad H x s). Away from the poles this is
///   z'   = -2J sqrt(1-z^2) sin(phi),
///   phi' =  2J (Lambda z + z cos(phi) / sqrt(1-z^2)).
BlochVector eom_rhs(const BlochVector& s, double lambda, double tunneling);

/// One classical RK4 step followed by renormalisation onto the unit sphere.
BlochVector rk4_step(const BlochVector& s, double lambda, double tunneling, double dt);

/// Advances s by time t with steps of at most dt (the last step is shortened
/// so the total is exactly t).
BlochVector advance(const BlochVector& s, double lambda, double tunneling, double t, double dt);

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> points;
  std::vector<BlochVector> bloch;
  /// Conserved H_cl of the initial point.
  double energy = 0.0;
};

/// Integrates from p0 over [0, total_time], recording every `record_every`-th step.
Trajectory integrate(const PhasePoint& p0, double lambda, double tunneling, double total_time, double dt,
                     int record_every = 1);

enum class Stability { StableCenter, Hyperbolic, Degenerate };
std::string to_string(Stability s);

struct FixedPoint {
  PhasePoint point;
  Stability stability;
};

using FixedPointSet = std::vector<FixedPoint>;

/// F1 = (0,0) always stable; F2 = (pi,0) stable for Lambda < 1, degenerate at
/// Lambda = 1, hyperbolic above with self-trapping centers (pi, +-sqrt(1 - 1/Lambda^2)).
FixedPointSet fixed_points(double lambda);

/// H_cl of the hyperbolic point (pi,0) when it exists (Lambda > 1).
std::optional<double> separatrix_energy(double lambda);

enum class Regime { Rabi, Josephson, JosephsonRunningPhase, Critical };
std::string to_string(Regime r);

Regime classify_regime(double lambda);

/// Lambda > 1, z0 != 0 and H_cl above the separatrix energy.
bool is_self_trapped(const PhasePoint& p0, double lambda);

}  // namespace becdimer
