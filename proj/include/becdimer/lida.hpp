#pragma once

#include <cstdint>
#include <vector>

#include "becdimer/meanfield.hpp"
#include "becdimer/types.hpp"

namespace becdimer {

/// Ensemble of classical Bloch vectors sampled from the Husimi function of a
/// coherent state (Liouville dynamics, leading order in 1/N).
struct Ensemble {
  /// One unit vector per column.
  Eigen::Matrix3Xd points;
  std::uint64_t seed = 0;
  PhasePoint origin{0.0, 0.0};
  int particles = 0;

  Eigen::Index size() const { return points.cols(); }
};

struct LidaOptions {
  int ensemble_size = 10000;
  std::uint64_t seed = 1;
  /// RK4 step in seconds.
  double dt = 1e-4;
  int workers = 1;
};

/// Draws M points i.i.d. from the density ~ cos^{2N}(Theta/2) around the
/// origin's Bloch vector: u = cos(Theta) by the exact inverse CDF
/// u = 2 r^{1/(N+1)} - 1, azimuth uniform. Point i uses its own counter
/// stream, so the ensemble is identical for any worker count.
Ensemble sample_husimi(const PhasePoint& origin, int particles, int ensemble_size, std::uint64_t seed,
                       int workers = 1);

/// Advances every point independently by time t under the mean-field flow.
Ensemble propagate_ensemble(const Ensemble& ensemble, double lambda, double tunneling, double t, double dt,
                            int workers = 1);

/// Mean Bloch vector, summed in point order.
Eigen::Vector3d ensemble_mean(const Ensemble& ensemble);

/// c = (1 + |mean of points|) / 2.
double ensemble_condensate_fraction(const Ensemble& ensemble);

/// Standard error of ensemble_condensate_fraction from the spread of the
/// points along the mean direction.
double ensemble_condensate_fraction_stderr(const Ensemble& ensemble);

/// Sample times 0, dt, 2 dt, ... up to and including t_end.
std::vector<double> sample_times(double t_end, double dt_sample);

/// Ensemble condensate fraction at each of the given ascending times.
std::vector<double> lida_condensate_series(const Ensemble& initial, double lambda, double tunneling,
                                           const std::vector<double>& times, double dt, int workers = 1);

/// Minimum ensemble condensate fraction over the sampled window [0, t_end].
double lida_min_c_window(const PhasePoint& origin, int particles, double lambda, double tunneling, double t_end,
                         double dt_sample, const LidaOptions& options);

}  // namespace becdimer
