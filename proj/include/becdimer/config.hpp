#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "becdimer/field_io.hpp"
#include "becdimer/gps.hpp"
#include "becdimer/types.hpp"

namespace becdimer {

enum class Command { Scan, MinScan, Evolve, Movie, FixedPoints, Contours, Compare };
std::string to_string(Command c);

struct RunConfig {
  Command command = Command::Scan;
  int particles = 40;
  double tunneling = 10.0;
  /// Exactly one of U / Lambda was given; the other is derived.
  bool lambda_given = true;
  double interaction = 0.0;
  double lambda = 0.0;
  double phi = 0.0;
  double z = 0.0;
  double tau = 1.0;
  double window = 0.5;
  double dt_sample = 0.01;
  /// End time for evolve (default 3.5 s) and movie (default 3 s).
  double t_end = 0.0;
  double dt = 1e-4;
  double dt_frame = 0.025;
  GridSpec grid;
  Engine engine = Engine::Quantum;
  std::vector<Observable> observables{Observable::CondensateFraction};
  int ensemble_size = 10000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out = "becdimer";
  std::vector<double> levels;
  Colormap colormap = Colormap::Viridis;
  std::optional<std::pair<double, double>> range;

  ModelParams params() const;
  LidaOptions lida() const;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Recognised configuration keys, in canonical order.
const std::vector<std::string>& config_keys();

/// Parses "key=value" lines ('#' starts a comment; ',' also separates
/// entries), then applies `overrides` on top. Throws ConfigError naming the
/// offending key for unknown keys, missing required keys, over-determined
/// interaction (both U and Lambda) and non-finite or malformed values.
RunConfig parse_config(std::string_view text, const KeyValues& overrides = {});

/// Canonical command line that reproduces `cfg`.
std::vector<std::string> to_arguments(const RunConfig& cfg);
std::string rerun_line(const RunConfig& cfg);

}  // namespace becdimer
