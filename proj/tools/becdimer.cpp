// becdimer: exact, mean-field and semiclassical dynamics of a BEC in a double well.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "becdimer/config.hpp"
#include "becdimer/run.hpp"

int main(int argc, char** argv) {
  using namespace becdimer;

  CLI::App app{"Two-mode Bose-Hubbard dimer: quantum, mean-field and LiDA dynamics over the global phase space"};
  app.set_version_flag("--version", kVersion);

  std::string command;
  std::string config_path;
  app.add_option("command", command, "scan | minscan | evolve | movie | fixedpoints | contours | compare")->required();
  app.add_option("--config", config_path, "key=value configuration file")->check(CLI::ExistingFile);

  struct FlagHelp {
    const char* key;
    const char* help;
  };
  static const FlagHelp flags[] = {
      {"N", "particle number (default 40)"},
      {"J", "tunneling rate in 1/s (default 10)"},
      {"U", "on-site interaction in 1/s"},
      {"Lambda", "U N / (2 J); give either this or --U"},
      {"phi", "initial relative phase (evolve, compare)"},
      {"z", "initial imbalance (evolve)"},
      {"tau", "snapshot time in s (scan, default 1)"},
      {"window", "window end T in s for minimum condensate fraction (default 0.5)"},
      {"dt_sample", "sampling interval in s (default 0.01)"},
      {"T", "end time in s (evolve default 3.5, movie default 3)"},
      {"dt", "RK4 step in s for LiDA (default 1e-4)"},
      {"dt_frame", "movie frame interval in s (default 0.025)"},
      {"grid", "NPHIxNZ cell-centred grid (default 200x101)"},
      {"phi_range", "phi_min,phi_max (default 0,2pi)"},
      {"z_range", "z_min,z_max (default -1,1)"},
      {"engine", "quantum | lida (minscan)"},
      {"observables", "comma list of c,E,E_sc,xi2,A_max (default c)"},
      {"M", "LiDA ensemble size (default 10000)"},
      {"seed", "LiDA RNG seed (default 1)"},
      {"workers", "worker threads (default 1)"},
      {"out", "output path prefix (default becdimer)"},
      {"levels", "contour energies, comma list"},
      {"colormap", "viridis | gray | coolwarm"},
      {"range", "heatmap colour range lo,hi"},
  };
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  for (const auto& f : flags) {
    options[f.key] = app.add_option(std::string("--") + f.key, values[f.key], f.help)->allow_extra_args(false);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitConfigError;
  }

  std::string text;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  KeyValues overrides{{"command", command}};
  for (const auto& f : flags) {
    if (options[f.key]->count() > 0) overrides.emplace_back(f.key, values[f.key]);
  }

  RunConfig cfg;
  try {
    cfg = parse_config(text, overrides);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return run(cfg, std::cerr).exit_code;
}
