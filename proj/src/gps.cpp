#include "becdimer/gps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "becdimer/meanfield.hpp"
#include "becdimer/parallel.hpp"

namespace becdimer {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

FieldMap blank_map(const GridSpec& grid, const ModelParams& params, Observable o) {
  FieldMap f;
  f.grid = grid;
  f.observable = o;
  f.particles = params.particles();
  f.tunneling = params.tunneling();
  f.interaction = params.interaction();
  f.lambda = params.lambda();
  f.values = Eigen::MatrixXd::Zero(grid.n_phi, grid.n_z);
  return f;
}

/// Index of the cell whose sample coordinate equals x, or -1.
int matching_index(double x, double lo, double hi, int n) {
  const double width = (hi - lo) / n;
  const double k = std::round((x - lo) / width - 0.5);
  if (k < 0 || k >= n) return -1;
  const double sample = lo + (2.0 * k + 1.0) * (hi - lo) / (2.0 * n);
  return std::abs(sample - x) <= 1e-9 ? static_cast<int>(k) : -1;
}

int mirrored_phi_index(const GridSpec& g, int i) {
  const double target = -g.phi(i);
  // Try the representatives of -phi that can fall inside [phi_min, phi_max).
  for (int shift = -2; shift <= 2; ++shift) {
    const int k = matching_index(target + shift * kTwoPi, g.phi_min, g.phi_max, g.n_phi);
    if (k >= 0) return k;
  }
  return -1;
}

}  // namespace

void GridSpec::validate() const {
  if (n_phi < 2 || n_z < 2) throw GridError("grid needs at least 2 cells along phi and z");
  if (!std::isfinite(phi_min) || !std::isfinite(phi_max) || !(phi_max > phi_min)) {
    throw GridError("grid phi range must be finite with phi_max > phi_min");
  }
  if (!(z_min >= -1.0) || !(z_max <= 1.0) || !(z_max > z_min)) {
    throw GridError("grid z range must satisfy -1 <= z_min < z_max <= 1");
  }
}

double GridSpec::phi(int i) const { return phi_min + (2.0 * i + 1.0) * (phi_max - phi_min) / (2.0 * n_phi); }

// Offsets from the midpoint, so z_j = -z_{n-1-j} exactly on a symmetric range.
double GridSpec::z(int j) const {
  return 0.5 * (z_min + z_max) + (2.0 * j + 1.0 - n_z) * (z_max - z_min) / (2.0 * n_z);
}

std::string tag(Observable o) {
  switch (o) {
    case Observable::CondensateFraction: return "c";
    case Observable::Epr: return "E";
    case Observable::EprSemiclassical: return "E_sc";
    case Observable::Squeezing: return "xi2";
    case Observable::MaxOverlap: return "A_max";
    case Observable::MinCondensateFraction: return "c_min";
    case Observable::ClassicalEnergy: return "h_cl";
  }
  return "?";
}

Observable observable_from_tag(const std::string& t) {
  for (Observable o : {Observable::CondensateFraction, Observable::Epr, Observable::EprSemiclassical,
                       Observable::Squeezing, Observable::MaxOverlap, Observable::MinCondensateFraction,
                       Observable::ClassicalEnergy}) {
    if (tag(o) == t) return o;
  }
  throw DomainError("unknown observable '" + t + "' (expected c, E, E_sc, xi2, A_max, c_min or h_cl)");
}

std::string to_string(Engine e) { return e == Engine::Quantum ? "quantum" : "lida"; }

Engine engine_from_string(const std::string& s) {
  if (s == "quantum") return Engine::Quantum;
  if (s == "lida") return Engine::Lida;
  throw DomainError("unknown engine '" + s + "' (expected quantum or lida)");
}

PointObservables observe_state(const StateVector& psi) {
  const int particles = static_cast<int>(psi.size()) - 1;
  PointObservables out;
  out.c = condensate_fraction(spdm(psi));
  out.epr = epr_entanglement(psi);
  out.epr_sc = entanglement_semiclassical(out.c, particles);
  const SpinMoments m = spin_moments(psi);
  out.xi2 = m.mean.norm() > mean_spin_threshold(particles) ? squeezing_xi2(m, particles) : kNaN;
  out.z_mean = m.mean.z() / (0.5 * particles);
  return out;
}

PointObservables observe_point(double phi, double z, double tau, const Spectrum& spectrum) {
  return observe_state(evolve(coherent_state(spectrum.particles(), phi, z), tau, spectrum));
}

double quantum_min_c_window(double phi, double z, double t_end, double dt_sample, const Spectrum& spectrum) {
  const Eigen::VectorXcd projection =
      project_onto_eigenbasis(coherent_state(spectrum.particles(), phi, z), spectrum);
  double lowest = std::numeric_limits<double>::infinity();
  for (double t : sample_times(t_end, dt_sample)) {
    lowest = std::min(lowest, condensate_fraction(spdm(evolve_from_projection(projection, t, spectrum))));
  }
  return lowest;
}

FieldMapSet scan_quantum(const GridSpec& grid, const ModelParams& params, double tau,
                         const std::vector<Observable>& observables, int workers) {
  return scan_quantum(grid, params, diagonalize(params), tau, observables, workers);
}

FieldMapSet scan_quantum(const GridSpec& grid, const ModelParams& params, const Spectrum& spectrum, double tau,
                         const std::vector<Observable>& observables, int workers) {
  grid.validate();
  if (spectrum.particles() != params.particles()) throw DimensionMismatch("scan_quantum: spectrum does not match N");
  if (!std::isfinite(tau)) throw DomainError("scan_quantum: tau must be finite");
  FieldMapSet maps;
  bool dynamic = false;
  bool overlap = false;
  for (Observable o : observables) {
    switch (o) {
      case Observable::CondensateFraction:
      case Observable::Epr:
      case Observable::EprSemiclassical:
      case Observable::Squeezing: dynamic = true; break;
      case Observable::MaxOverlap: overlap = true; break;
      default: throw DomainError("scan_quantum: observable " + tag(o) + " is not a snapshot observable");
    }
    FieldMap f = blank_map(grid, params, o);
    f.tau = tau;
    maps.emplace(o, std::move(f));
  }

  auto slot = [&](Observable o) -> Eigen::MatrixXd* {
    auto it = maps.find(o);
    return it == maps.end() ? nullptr : &it->second.values;
  };
  Eigen::MatrixXd* c = slot(Observable::CondensateFraction);
  Eigen::MatrixXd* e = slot(Observable::Epr);
  Eigen::MatrixXd* esc = slot(Observable::EprSemiclassical);
  Eigen::MatrixXd* xi = slot(Observable::Squeezing);
  Eigen::MatrixXd* amax = slot(Observable::MaxOverlap);

  parallel_for(static_cast<std::size_t>(grid.n_phi), workers, [&](std::size_t begin, std::size_t end) {
    for (auto i = static_cast<int>(begin); i < static_cast<int>(end); ++i) {
      for (int j = 0; j < grid.n_z; ++j) {
        if (dynamic) {
          const PointObservables p = observe_point(grid.phi(i), grid.z(j), tau, spectrum);
          if (c) (*c)(i, j) = p.c;
          if (e) (*e)(i, j) = p.epr;
          if (esc) (*esc)(i, j) = p.epr_sc;
          if (xi) (*xi)(i, j) = p.xi2;
        }
        if (overlap) (*amax)(i, j) = max_overlap(grid.phi(i), grid.z(j), spectrum);
      }
    }
  });
  return maps;
}

FieldMap scan_min_window(const GridSpec& grid, const ModelParams& params, double t_end, double dt_sample,
                         Engine engine, const LidaOptions& lida, int workers) {
  grid.validate();
  if (!(t_end > 0.0)) throw DomainError("scan_min_window: window end T must be > 0");
  if (!(dt_sample > 0.0)) throw DomainError("scan_min_window: dt_sample must be > 0");
  FieldMap f = blank_map(grid, params, Observable::MinCondensateFraction);
  f.window = t_end;
  f.dt_sample = dt_sample;
  f.engine = engine;

  if (engine == Engine::Quantum) {
    const Spectrum spectrum = diagonalize(params);
    parallel_for(static_cast<std::size_t>(grid.n_phi), workers, [&](std::size_t begin, std::size_t end) {
      for (auto i = static_cast<int>(begin); i < static_cast<int>(end); ++i) {
        for (int j = 0; j < grid.n_z; ++j) {
          f.values(i, j) = quantum_min_c_window(grid.phi(i), grid.z(j), t_end, dt_sample, spectrum);
        }
      }
    });
  } else {
    f.lida = lida;
    // Ensembles are parallelised internally; grid points run in order.
    for (int i = 0; i < grid.n_phi; ++i) {
      for (int j = 0; j < grid.n_z; ++j) {
        f.values(i, j) = lida_min_c_window(PhasePoint(grid.phi(i), grid.z(j)), params.particles(), params.lambda(),
                                           params.tunneling(), t_end, dt_sample, lida);
      }
    }
  }
  return f;
}

FieldMap classical_energy_map(const GridSpec& grid, double lambda) {
  grid.validate();
  FieldMap f;
  f.grid = grid;
  f.observable = Observable::ClassicalEnergy;
  f.lambda = lambda;
  f.values.resize(grid.n_phi, grid.n_z);
  for (int i = 0; i < grid.n_phi; ++i) {
    for (int j = 0; j < grid.n_z; ++j) f.values(i, j) = h_cl(PhasePoint(grid.phi(i), grid.z(j)), lambda);
  }
  return f;
}

SymmetryMaps symmetry_maps(const FieldMap& f) {
  const GridSpec& g = f.grid;
  std::vector<int> z_mirror(static_cast<std::size_t>(g.n_z));
  for (int j = 0; j < g.n_z; ++j) {
    z_mirror[static_cast<std::size_t>(j)] = matching_index(-g.z(j), g.z_min, g.z_max, g.n_z);
    if (z_mirror[static_cast<std::size_t>(j)] < 0) throw GridError("symmetry_maps: grid is not closed under z -> -z");
  }
  std::vector<int> phi_mirror(static_cast<std::size_t>(g.n_phi));
  for (int i = 0; i < g.n_phi; ++i) {
    phi_mirror[static_cast<std::size_t>(i)] = mirrored_phi_index(g, i);
    if (phi_mirror[static_cast<std::size_t>(i)] < 0) {
      throw GridError("symmetry_maps: grid is not closed under phi -> -phi (mod 2 pi)");
    }
  }
  SymmetryMaps out;
  out.s_breaking.resize(g.n_phi, g.n_z);
  out.relabel_residual.resize(g.n_phi, g.n_z);
  for (int i = 0; i < g.n_phi; ++i) {
    for (int j = 0; j < g.n_z; ++j) {
      const int jm = z_mirror[static_cast<std::size_t>(j)];
      const int im = phi_mirror[static_cast<std::size_t>(i)];
      out.s_breaking(i, j) = f.values(i, j) - f.values(i, jm);
      out.relabel_residual(i, j) = f.values(i, j) - f.values(im, jm);
    }
  }
  return out;
}

Section section(const FieldMap& f, double phi0) {
  const GridSpec& g = f.grid;
  int best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (int i = 0; i < g.n_phi; ++i) {
    const double d = std::abs(wrap_phase(g.phi(i) - phi0 + kPi) - kPi);
    if (d < best_distance) {
      best_distance = d;
      best = i;
    }
  }
  Section s;
  s.column = best;
  s.phi = g.phi(best);
  for (int j = 0; j < g.n_z; ++j) {
    s.z.push_back(g.z(j));
    s.values.push_back(f.values(best, j));
  }
  return s;
}

std::vector<FieldMap> movie_frames(const GridSpec& grid, const ModelParams& params, double t_end, double dt_frame,
                                   Observable observable, int workers) {
  if (!(dt_frame > 0.0)) throw DomainError("movie_frames: dt_frame must be > 0");
  if (observable == Observable::MaxOverlap) throw DomainError("movie_frames: A_max is time independent");
  const Spectrum spectrum = diagonalize(params);
  std::vector<FieldMap> frames;
  for (double t : sample_times(t_end, dt_frame)) {
    auto maps = scan_quantum(grid, params, spectrum, t, {observable}, workers);
    frames.push_back(std::move(maps.at(observable)));
  }
  return frames;
}

}  // namespace becdimer
