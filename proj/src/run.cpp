#include "becdimer/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "becdimer/contours.hpp"
#include "becdimer/meanfield.hpp"
#include "becdimer/parallel.hpp"

namespace becdimer {

namespace {

class OutputSet {
 public:
  explicit OutputSet(std::string prefix) : prefix_(std::move(prefix)) {}

  std::filesystem::path path(const std::string& suffix) {
    std::filesystem::path p = prefix_ + "_" + suffix;
    files_.push_back(p);
    return p;
  }

  std::ofstream open(const std::string& suffix) {
    const auto p = path(suffix);
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot open '" + p.string() + "' for writing");
    return out;
  }

  void remove_all() {
    for (const auto& p : files_) {
      std::error_code ec;
      std::filesystem::remove(p, ec);
    }
    files_.clear();
  }

  const std::vector<std::filesystem::path>& files() const { return files_; }

 private:
  std::string prefix_;
  std::vector<std::filesystem::path> files_;
};

void write_table_header(std::ostream& out, const RunConfig& cfg, const KeyValues& entries,
                        const std::string& columns) {
  out << "# format=becdimer-table\n";
  out << "# version=" << kVersion << '\n';
  out << "# command=" << to_string(cfg.command) << '\n';
  out << "# N=" << cfg.particles << '\n';
  out << "# J=" << format_shortest(cfg.tunneling) << '\n';
  out << "# U=" << format_shortest(cfg.interaction) << '\n';
  out << "# Lambda=" << format_shortest(cfg.lambda) << '\n';
  for (const auto& [k, v] : entries) out << "# " << k << '=' << v << '\n';
  out << "# rerun=" << rerun_line(cfg) << '\n';
  out << "# columns=" << columns << '\n';
}

void finish(std::ofstream& out, const std::string& what) {
  out.flush();
  if (!out) throw IoError("failed writing " + what);
}

std::pair<double, double> default_range(Observable o, const std::vector<const Eigen::MatrixXd*>& data) {
  switch (o) {
    case Observable::CondensateFraction:
    case Observable::MinCondensateFraction: return {0.5, 1.0};
    case Observable::MaxOverlap: return {0.0, 1.0};
    case Observable::Squeezing: return {0.0, 2.0};
    default: break;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto* m : data) {
    for (Eigen::Index k = 0; k < m->size(); ++k) {
      const double v = m->data()[k];
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  if (!std::isfinite(lo)) return {0.0, 1.0};
  if (!(hi > lo)) return {lo - 0.5, hi + 0.5};
  return {lo, hi};
}

void annotate(FieldMap& f, const RunConfig& cfg) {
  f.extra.emplace_back("command", to_string(cfg.command));
  f.extra.emplace_back("rerun", rerun_line(cfg));
}

void write_map_pair(OutputSet& outputs, FieldMap& f, const RunConfig& cfg, const std::string& stem,
                    std::pair<double, double> range) {
  annotate(f, cfg);
  write_field_csv(f, outputs.path(stem + ".csv"));
  write_heatmap(f, cfg.colormap, range.first, range.second, outputs.path(stem + ".ppm"));
}

void run_scan(const RunConfig& cfg, OutputSet& outputs) {
  for (Observable o : cfg.observables) {
    if (o == Observable::MinCondensateFraction || o == Observable::ClassicalEnergy) {
      throw ConfigError("observables", "scan supports c, E, E_sc, xi2 and A_max; got " + tag(o));
    }
  }
  auto maps = scan_quantum(cfg.grid, cfg.params(), cfg.tau, cfg.observables, cfg.workers);
  for (auto& [o, f] : maps) {
    const auto range = cfg.range.value_or(default_range(o, {&f.values}));
    write_map_pair(outputs, f, cfg, tag(o), range);
  }
}

void run_minscan(const RunConfig& cfg, OutputSet& outputs) {
  FieldMap f = scan_min_window(cfg.grid, cfg.params(), cfg.window, cfg.dt_sample, cfg.engine, cfg.lida(), cfg.workers);
  const auto range = cfg.range.value_or(default_range(f.observable, {&f.values}));
  write_map_pair(outputs, f, cfg, tag(f.observable), range);
}

void run_evolve(const RunConfig& cfg, OutputSet& outputs) {
  const ModelParams params = cfg.params();
  const Spectrum spectrum = diagonalize(params);
  const Eigen::VectorXcd projection =
      project_onto_eigenbasis(coherent_state(params.particles(), cfg.phi, cfg.z), spectrum);
  auto out = outputs.open("evolve.csv");
  write_table_header(out, cfg,
                     {{"phi", format_shortest(cfg.phi)},
                      {"z", format_shortest(cfg.z)},
                      {"T", format_shortest(cfg.t_end)},
                      {"dt_sample", format_shortest(cfg.dt_sample)}},
                     "t,c,E,E_sc,xi2,z");
  for (double t : sample_times(cfg.t_end, cfg.dt_sample)) {
    const PointObservables p = observe_state(evolve_from_projection(projection, t, spectrum));
    out << format_full(t) << ',' << format_full(p.c) << ',' << format_full(p.epr) << ',' << format_full(p.epr_sc)
        << ',' << format_full(p.xi2) << ',' << format_full(p.z_mean) << '\n';
  }
  finish(out, "evolve table");
}

void run_movie(const RunConfig& cfg, OutputSet& outputs) {
  if (cfg.observables.size() != 1) {
    throw ConfigError("observables", "movie renders exactly one observable");
  }
  const Observable o = cfg.observables.front();
  auto frames = movie_frames(cfg.grid, cfg.params(), cfg.t_end, cfg.dt_frame, o, cfg.workers);
  std::vector<const Eigen::MatrixXd*> all;
  for (const auto& f : frames) all.push_back(&f.values);
  const auto range = cfg.range.value_or(default_range(o, all));
  for (std::size_t k = 0; k < frames.size(); ++k) {
    char stem[64];
    std::snprintf(stem, sizeof stem, "%s_f%04zu", tag(o).c_str(), k);
    frames[k].extra.emplace_back("frame", std::to_string(k));
    write_map_pair(outputs, frames[k], cfg, stem, range);
  }
}

void run_fixedpoints(const RunConfig& cfg, OutputSet& outputs, std::ostream& log) {
  const auto fps = fixed_points(cfg.lambda);
  const auto sep = separatrix_energy(cfg.lambda);
  const std::string regime = to_string(classify_regime(cfg.lambda));
  auto out = outputs.open("fixedpoints.csv");
  write_table_header(out, cfg,
                     {{"regime", regime}, {"separatrix_energy", sep ? format_shortest(*sep) : std::string("absent")}},
                     "phi,z,stability,energy");
  log << "regime: " << regime << '\n';
  log << "separatrix energy: " << (sep ? format_shortest(*sep) : std::string("absent")) << '\n';
  for (const auto& fp : fps) {
    const double e = h_cl(fp.point, cfg.lambda);
    out << format_full(fp.point.phi()) << ',' << format_full(fp.point.z()) << ',' << to_string(fp.stability) << ','
        << format_full(e) << '\n';
    log << "  (" << format_shortest(fp.point.phi()) << ", " << format_shortest(fp.point.z()) << ") "
        << to_string(fp.stability) << " H=" << format_shortest(e) << '\n';
  }
  finish(out, "fixed point table");
}

void run_contours(const RunConfig& cfg, OutputSet& outputs) {
  std::vector<double> levels = cfg.levels;
  if (levels.empty()) {
    const double lambda = cfg.lambda;
    const double top = lambda > 1.0 ? lambda / 2.0 + 1.0 / (2.0 * lambda) : 1.0;
    for (int k = 1; k <= 10; ++k) levels.push_back(-1.0 + (top + 1.0) * k / 11.0);
    if (auto sep = separatrix_energy(lambda)) levels.push_back(*sep);
  }
  const auto contours = iso_energy_contours(cfg.lambda, levels, cfg.grid.n_phi, cfg.grid.n_z);
  auto out = outputs.open("contours.csv");
  std::string level_list;
  for (double l : levels) level_list += (level_list.empty() ? "" : ",") + format_shortest(l);
  write_table_header(out, cfg, {{"levels", level_list}, {"cells", std::to_string(cfg.grid.n_phi) + "x" + std::to_string(cfg.grid.n_z)}},
                     "phi,z");
  write_contours_csv(out, contours);
  finish(out, "contour table");
}

void run_compare(const RunConfig& cfg, OutputSet& outputs) {
  const ModelParams params = cfg.params();
  const Spectrum spectrum = diagonalize(params);
  const int nz = cfg.grid.n_z;
  std::vector<double> quantum(static_cast<std::size_t>(nz));
  std::vector<double> lida(static_cast<std::size_t>(nz));
  parallel_for(static_cast<std::size_t>(nz), cfg.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      quantum[j] = quantum_min_c_window(cfg.phi, cfg.grid.z(static_cast<int>(j)), cfg.window, cfg.dt_sample, spectrum);
    }
  });
  LidaOptions options = cfg.lida();
  for (int j = 0; j < nz; ++j) {
    lida[static_cast<std::size_t>(j)] = lida_min_c_window(PhasePoint(cfg.phi, cfg.grid.z(j)), params.particles(),
                                                          params.lambda(), params.tunneling(), cfg.window,
                                                          cfg.dt_sample, options);
  }
  auto out = outputs.open("compare.csv");
  write_table_header(out, cfg,
                     {{"phi", format_shortest(cfg.phi)},
                      {"window", format_shortest(cfg.window)},
                      {"dt_sample", format_shortest(cfg.dt_sample)},
                      {"M", std::to_string(cfg.ensemble_size)},
                      {"seed", std::to_string(cfg.seed)},
                      {"dt", format_shortest(cfg.dt)}},
                     "z,c_quantum,c_lida,c_meanfield");
  for (int j = 0; j < nz; ++j) {
    out << format_full(cfg.grid.z(j)) << ',' << format_full(quantum[static_cast<std::size_t>(j)]) << ','
        << format_full(lida[static_cast<std::size_t>(j)]) << ",1\n";
  }
  finish(out, "comparison table");
}

}  // namespace

RunResult run(const RunConfig& cfg, std::ostream& log) {
  OutputSet outputs(cfg.out);
  RunResult result;
  try {
    switch (cfg.command) {
      case Command::Scan: run_scan(cfg, outputs); break;
      case Command::MinScan: run_minscan(cfg, outputs); break;
      case Command::Evolve: run_evolve(cfg, outputs); break;
      case Command::Movie: run_movie(cfg, outputs); break;
      case Command::FixedPoints: run_fixedpoints(cfg, outputs, log); break;
      case Command::Contours: run_contours(cfg, outputs); break;
      case Command::Compare: run_compare(cfg, outputs); break;
    }
  } catch (const ConfigError& e) {
    outputs.remove_all();
    log << "error: " << e.what() << '\n';
    result.exit_code = kExitConfigError;
    return result;
  } catch (const std::exception& e) {
    outputs.remove_all();
    log << "error: " << e.what() << '\n';
    result.exit_code = kExitNumericalFailure;
    return result;
  }
  result.files = outputs.files();
  for (const auto& f : result.files) log << "wrote " << f.string() << '\n';
  return result;
}

}  // namespace becdimer
