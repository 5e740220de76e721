#include "becdimer/lida.hpp"

#include <algorithm>
#include <cmath>

#include "becdimer/parallel.hpp"
#include "becdimer/rng.hpp"

namespace becdimer {

Ensemble sample_husimi(const PhasePoint& origin, int particles, int ensemble_size, std::uint64_t seed,
                       int workers) {
  if (ensemble_size < 1) throw DomainError("sample_husimi: ensemble size M must be >= 1");
  if (particles < 1) throw DomainError("sample_husimi: N must be >= 1");

  // Orthonormal frame (e_theta, e_phi, axis) at the origin.
  const BlochVector axis = to_bloch(origin);
  const double theta = std::acos(std::clamp(origin.z(), -1.0, 1.0));
  const double az = kPhaseSign * origin.phi();
  const BlochVector e_theta(std::cos(theta) * std::cos(az), std::cos(theta) * std::sin(az), -std::sin(theta));
  const BlochVector e_phi(-std::sin(az), std::cos(az), 0.0);
  const double exponent = 1.0 / (particles + 1.0);

  Ensemble e;
  e.points.resize(3, ensemble_size);
  e.seed = seed;
  e.origin = origin;
  e.particles = particles;
  parallel_for(static_cast<std::size_t>(ensemble_size), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CounterRng rng(seed, i);
      const double u = std::clamp(2.0 * std::pow(rng.next_open_closed(), exponent) - 1.0, -1.0, 1.0);
      const double alpha = kTwoPi * rng.next_unit();
      const double sin_theta = std::sqrt(std::max(0.0, 1.0 - u * u));
      const BlochVector p =
          sin_theta * std::cos(alpha) * e_theta + sin_theta * std::sin(alpha) * e_phi + u * axis;
      e.points.col(static_cast<Eigen::Index>(i)) = p.normalized();
    }
  });
  return e;
}

Ensemble propagate_ensemble(const Ensemble& ensemble, double lambda, double tunneling, double t, double dt,
                            int workers) {
  if (!(dt > 0.0)) throw DomainError("propagate_ensemble: dt must be > 0");
  if (!(t >= 0.0)) throw DomainError("propagate_ensemble: t must be >= 0");
  Ensemble out = ensemble;
  if (t == 0.0) return out;
  parallel_for(static_cast<std::size_t>(ensemble.size()), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      out.points.col(k) = advance(ensemble.points.col(k), lambda, tunneling, t, dt);
    }
  });
  return out;
}

Eigen::Vector3d ensemble_mean(const Ensemble& ensemble) {
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  for (Eigen::Index i = 0; i < ensemble.size(); ++i) sum += ensemble.points.col(i);
  return sum / static_cast<double>(ensemble.size());
}

double ensemble_condensate_fraction(const Ensemble& ensemble) {
  if (ensemble.size() < 1) throw DomainError("ensemble_condensate_fraction: empty ensemble");
  return 0.5 * (1.0 + ensemble_mean(ensemble).norm());
}

double ensemble_condensate_fraction_stderr(const Ensemble& ensemble) {
  const Eigen::Index m = ensemble.size();
  if (m < 2) return 0.0;
  const Eigen::Vector3d mean = ensemble_mean(ensemble);
  const double length = mean.norm();
  if (length == 0.0) return 0.0;
  const Eigen::Vector3d dir = mean / length;
  double sum_sq = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double d = ensemble.points.col(i).dot(dir) - length;
    sum_sq += d * d;
  }
  const double variance = sum_sq / static_cast<double>(m - 1);
  return 0.5 * std::sqrt(variance / static_cast<double>(m));
}

std::vector<double> sample_times(double t_end, double dt_sample) {
  if (!(t_end >= 0.0)) throw DomainError("time window end must be >= 0");
  if (!(dt_sample > 0.0)) throw DomainError("sampling interval must be > 0");
  std::vector<double> times;
  const auto steps = static_cast<long>(std::floor(t_end / dt_sample + 1e-9));
  for (long k = 0; k <= steps; ++k) times.push_back(static_cast<double>(k) * dt_sample);
  if (t_end - times.back() > 1e-9 * std::max(1.0, t_end)) times.push_back(t_end);
  return times;
}

std::vector<double> lida_condensate_series(const Ensemble& initial, double lambda, double tunneling,
                                           const std::vector<double>& times, double dt, int workers) {
  std::vector<double> out;
  out.reserve(times.size());
  Ensemble current = initial;
  double t_now = 0.0;
  for (double t : times) {
    if (t < t_now) throw DomainError("lida_condensate_series: times must be ascending and >= 0");
    current = propagate_ensemble(current, lambda, tunneling, t - t_now, dt, workers);
    t_now = t;
    out.push_back(ensemble_condensate_fraction(current));
  }
  return out;
}

double lida_min_c_window(const PhasePoint& origin, int particles, double lambda, double tunneling, double t_end,
                         double dt_sample, const LidaOptions& options) {
  const Ensemble e = sample_husimi(origin, particles, options.ensemble_size, options.seed, options.workers);
  const auto series =
      lida_condensate_series(e, lambda, tunneling, sample_times(t_end, dt_sample), options.dt, options.workers);
  return *std::min_element(series.begin(), series.end());
}

}  // namespace becdimer
