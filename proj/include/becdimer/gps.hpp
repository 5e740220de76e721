#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "becdimer/lida.hpp"
#include "becdimer/quantum.hpp"
#include "becdimer/types.hpp"

namespace becdimer {

/// Cell-centred grid of initial conditions. Sample points are
///   phi_i = phi_min + (i + 1/2) (phi_max - phi_min) / n_phi,
///   z_j   = z_min   + (j + 1/2) (z_max - z_min) / n_z,
/// so z = +-1 is never sampled on the default [-1, 1] range.
struct GridSpec {
  int n_phi = 200;
  int n_z = 101;
  double phi_min = 0.0;
  double phi_max = kTwoPi;
  double z_min = -1.0;
  double z_max = 1.0;

  /// Throws GridError if the grid is unusable.
  void validate() const;
  double phi(int i) const;
  double z(int j) const;
  std::size_t cells() const { return static_cast<std::size_t>(n_phi) * static_cast<std::size_t>(n_z); }
};

enum class Observable { CondensateFraction, Epr, EprSemiclassical, Squeezing, MaxOverlap, MinCondensateFraction, ClassicalEnergy };

/// Short tags used in file names and headers: c, E, E_sc, xi2, A_max, c_min, h_cl.
std::string tag(Observable o);
Observable observable_from_tag(const std::string& tag);

enum class Engine { Quantum, Lida };
std::string to_string(Engine e);
Engine engine_from_string(const std::string& s);

struct FieldMap {
  GridSpec grid;
  Observable observable = Observable::CondensateFraction;
  /// Evaluation time for snapshot maps.
  std::optional<double> tau;
  /// Window end and sampling interval for window-minimum maps.
  std::optional<double> window;
  std::optional<double> dt_sample;
  int particles = 40;
  double tunneling = 10.0;
  double interaction = 0.0;
  double lambda = 0.0;
  Engine engine = Engine::Quantum;
  /// Present for LiDA maps.
  std::optional<LidaOptions> lida;
  /// values(i, j) at (phi_i, z_j); NaN marks undefined points (xi^2 without mean spin).
  Eigen::MatrixXd values;
  /// Additional header entries (command, rerun line, ...), written in order.
  std::vector<std::pair<std::string, std::string>> extra;
};

/// Every requested observable for one initial coherent state after time tau.
/// This is the single-point pipeline shared by all scans.
struct PointObservables {
  double c = 0.0;
  double epr = 0.0;
  double epr_sc = 0.0;
  double xi2 = 0.0;  // NaN when there is no mean spin
  double z_mean = 0.0;
};

PointObservables observe_state(const StateVector& psi);
PointObservables observe_point(double phi, double z, double tau, const Spectrum& spectrum);

/// Minimum quantum condensate fraction over the sampled window [0, t_end].
double quantum_min_c_window(double phi, double z, double t_end, double dt_sample, const Spectrum& spectrum);

using FieldMapSet = std::map<Observable, FieldMap>;

/// Snapshot maps at time tau. The spectrum is computed once; A_max is time independent.
FieldMapSet scan_quantum(const GridSpec& grid, const ModelParams& params, double tau,
                         const std::vector<Observable>& observables, int workers = 1);
FieldMapSet scan_quantum(const GridSpec& grid, const ModelParams& params, const Spectrum& spectrum, double tau,
                         const std::vector<Observable>& observables, int workers = 1);

/// Per-point minimum condensate fraction over [0, t_end] sampled every dt_sample.
/// For the LiDA engine every grid point uses an ensemble seeded with lida.seed.
FieldMap scan_min_window(const GridSpec& grid, const ModelParams& params, double t_end, double dt_sample,
                         Engine engine, const LidaOptions& lida = {}, int workers = 1);

/// H_cl sampled on the grid.
FieldMap classical_energy_map(const GridSpec& grid, double lambda);

struct SymmetryMaps {
  /// f(phi, z) - f(phi, -z)
  Eigen::MatrixXd s_breaking;
  /// f(phi, z) - f(-phi, -z)
  Eigen::MatrixXd relabel_residual;
};

/// Throws GridError unless z -> -z and phi -> -phi (mod 2 pi) map the grid onto itself.
SymmetryMaps symmetry_maps(const FieldMap& f);

struct Section {
  int column = 0;
  double phi = 0.0;
  std::vector<double> z;
  std::vector<double> values;
};

/// Nearest grid column to phi0 (circular distance).
Section section(const FieldMap& f, double phi0);

/// Snapshot maps at 0, dt_frame, ..., t_end.
std::vector<FieldMap> movie_frames(const GridSpec& grid, const ModelParams& params, double t_end, double dt_frame,
                                   Observable observable, int workers = 1);

}  // namespace becdimer
