#include "becdimer/meanfield.hpp"

#include <algorithm>
#include <cmath>

namespace becdimer {

namespace {

void require_lambda(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("Lambda must be finite and >= 0");
}

}  // namespace

double wrap_phase(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

PhasePoint::PhasePoint(double phi, double z) : phi_(wrap_phase(phi)), z_(z) {
  if (!std::isfinite(phi)) throw DomainError("phase must be finite");
  if (!(z >= -1.0 && z <= 1.0)) throw DomainError("imbalance z=" + std::to_string(z) + " outside [-1,1]");
}

BlochVector to_bloch(const PhasePoint& p) {
  const double r = std::sqrt(std::max(0.0, 1.0 - p.z() * p.z()));
  return {r * std::cos(p.phi()), kPhaseSign * r * std::sin(p.phi()), p.z()};
}

PhasePoint to_phase_point(const BlochVector& s) {
  const double z = std::clamp(s.z() / s.norm(), -1.0, 1.0);
  return PhasePoint(std::atan2(kPhaseSign * s.y(), s.x()), z);
}

double h_cl(const PhasePoint& p, double lambda) {
  return lambda * p.z() * p.z() / 2.0 - std::sqrt(1.0 - p.z() * p.z()) * std::cos(p.phi());
}

double h_cl(const BlochVector& s, double lambda) { return lambda * s.z() * s.z() / 2.0 - s.x(); }

BlochVector eom_rhs(const BlochVector& s, double lambda, double tunneling) {
  const BlochVector grad(-1.0, 0.0, lambda * s.z());
  return 2.0 * tunneling * grad.cross(s);
}

BlochVector rk4_step(const BlochVector& s, double lambda, double tunneling, double dt) {
  const BlochVector k1 = eom_rhs(s, lambda, tunneling);
  const BlochVector k2 = eom_rhs(s + 0.5 * dt * k1, lambda, tunneling);
  const BlochVector k3 = eom_rhs(s + 0.5 * dt * k2, lambda, tunneling);
  const BlochVector k4 = eom_rhs(s + dt * k3, lambda, tunneling);
  const BlochVector next = s + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return next.normalized();
}

BlochVector advance(const BlochVector& s, double lambda, double tunneling, double t, double dt) {
  if (!(dt > 0.0)) throw DomainError("integration step dt must be > 0");
  if (!(t >= 0.0)) throw DomainError("integration time must be >= 0");
  if (t == 0.0) return s;
  const auto steps = static_cast<long>(std::ceil(t / dt - 1e-9));
  const double h = t / static_cast<double>(steps);
  BlochVector out = s;
  for (long i = 0; i < steps; ++i) out = rk4_step(out, lambda, tunneling, h);
  return out;
}

Trajectory integrate(const PhasePoint& p0, double lambda, double tunneling, double total_time, double dt,
                     int record_every) {
  if (!(dt > 0.0)) throw DomainError("integration step dt must be > 0");
  if (!(total_time >= 0.0)) throw DomainError("integration time T must be >= 0");
  if (record_every < 1) throw DomainError("record_every must be >= 1");

  const auto steps = total_time == 0.0 ? 0L : static_cast<long>(std::ceil(total_time / dt - 1e-9));
  const double h = steps == 0 ? 0.0 : total_time / static_cast<double>(steps);

  Trajectory traj;
  traj.energy = h_cl(p0, lambda);
  BlochVector s = to_bloch(p0);
  auto record = [&](long step) {
    traj.times.push_back(static_cast<double>(step) * h);
    traj.bloch.push_back(s);
    traj.points.push_back(to_phase_point(s));
  };
  record(0);
  for (long i = 1; i <= steps; ++i) {
    s = rk4_step(s, lambda, tunneling, h);
    if (i % record_every == 0 || i == steps) record(i);
  }
  return traj;
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::StableCenter: return "stable-center";
    case Stability::Hyperbolic: return "hyperbolic";
    case Stability::Degenerate: return "degenerate";
  }
  return "unknown";
}

FixedPointSet fixed_points(double lambda) {
  require_lambda(lambda);
  FixedPointSet out;
  out.push_back({PhasePoint(0.0, 0.0), Stability::StableCenter});
  if (lambda < 1.0) {
    out.push_back({PhasePoint(kPi, 0.0), Stability::StableCenter});
  } else if (lambda == 1.0) {
    out.push_back({PhasePoint(kPi, 0.0), Stability::Degenerate});
  } else {
    out.push_back({PhasePoint(kPi, 0.0), Stability::Hyperbolic});
    const double z_st = std::sqrt(1.0 - 1.0 / (lambda * lambda));
    out.push_back({PhasePoint(kPi, z_st), Stability::StableCenter});
    out.push_back({PhasePoint(kPi, -z_st), Stability::StableCenter});
  }
  return out;
}

std::optional<double> separatrix_energy(double lambda) {
  require_lambda(lambda);
  if (lambda > 1.0) return h_cl(PhasePoint(kPi, 0.0), lambda);
  return std::nullopt;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Rabi: return "Rabi";
    case Regime::Josephson: return "Josephson";
    case Regime::JosephsonRunningPhase: return "Josephson-with-running-phase-ST";
    case Regime::Critical: return "critical";
  }
  return "unknown";
}

Regime classify_regime(double lambda) {
  require_lambda(lambda);
  if (lambda == 1.0 || lambda == 2.0) return Regime::Critical;
  if (lambda < 1.0) return Regime::Rabi;
  if (lambda < 2.0) return Regime::Josephson;
  return Regime::JosephsonRunningPhase;
}

bool is_self_trapped(const PhasePoint& p0, double lambda) {
  require_lambda(lambda);
  if (!(lambda > 1.0) || p0.z() == 0.0) return false;
  return h_cl(p0, lambda) > *separatrix_energy(lambda);
}

}  // namespace becdimer
