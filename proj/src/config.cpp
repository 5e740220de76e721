#include "becdimer/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace becdimer {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  return parts;
}

double to_double(const std::string& key, const std::string& value) {
  double v = 0.0;
  const char* begin = value.data();
  const char* end = value.data() + value.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec == std::errc() && res.ptr == end) {
    if (!std::isfinite(v)) throw ConfigError(key, "non-finite value for key '" + key + "': " + value);
    return v;
  }
  // from_chars rejects "inf"/"nan" spellings that strtod accepts; report them as non-finite.
  std::string lower = value;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  const std::string body = (!lower.empty() && (lower[0] == '+' || lower[0] == '-')) ? lower.substr(1) : lower;
  if (body == "inf" || body == "infinity" || body == "nan") {
    throw ConfigError(key, "non-finite value for key '" + key + "': " + value);
  }
  throw ConfigError(key, "invalid number for key '" + key + "': '" + value + "'");
}

long long to_integer(const std::string& key, const std::string& value) {
  long long v = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw ConfigError(key, "invalid integer for key '" + key + "': '" + value + "'");
  }
  return v;
}

std::pair<double, double> to_pair(const std::string& key, const std::string& value) {
  const auto parts = split(value, ',');
  if (parts.size() != 2) throw ConfigError(key, "key '" + key + "' expects 'a,b', got '" + value + "'");
  return {to_double(key, parts[0]), to_double(key, parts[1])};
}

Command command_from_string(const std::string& value) {
  static const std::map<std::string, Command> commands = {
      {"scan", Command::Scan},         {"minscan", Command::MinScan},   {"evolve", Command::Evolve},
      {"movie", Command::Movie},       {"fixedpoints", Command::FixedPoints}, {"contours", Command::Contours},
      {"compare", Command::Compare}};
  auto it = commands.find(value);
  if (it == commands.end()) {
    throw ConfigError("command", "unknown command '" + value +
                                     "' (expected scan, minscan, evolve, movie, fixedpoints, contours or compare)");
  }
  return it->second;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Scan: return "scan";
    case Command::MinScan: return "minscan";
    case Command::Evolve: return "evolve";
    case Command::Movie: return "movie";
    case Command::FixedPoints: return "fixedpoints";
    case Command::Contours: return "contours";
    case Command::Compare: return "compare";
  }
  return "?";
}

ModelParams RunConfig::params() const {
  return lambda_given ? ModelParams::from_lambda(particles, tunneling, lambda)
                      : ModelParams::from_interaction(particles, tunneling, interaction);
}

LidaOptions RunConfig::lida() const {
  LidaOptions o;
  o.ensemble_size = ensemble_size;
  o.seed = seed;
  o.dt = dt;
  o.workers = workers;
  return o;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "command", "N",          "J",  "U",        "Lambda",    "phi",     "z",      "tau",
      "window",  "dt_sample",  "T",  "dt",       "dt_frame",  "grid",    "phi_range", "z_range",
      "engine",  "observables", "M", "seed",     "workers",   "out",     "levels", "colormap",
      "range"};
  return keys;
}

RunConfig parse_config(std::string_view text, const KeyValues& overrides) {
  const auto& keys = config_keys();
  std::map<std::string, std::string> values;
  auto put = [&](const std::string& key, const std::string& value) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(key, "unknown configuration key '" + key + "'");
    }
    values[key] = value;
  };

  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // Only split on commas between entries, not inside list values such as "range=0.5,1".
    std::vector<std::string> entries;
    for (const auto& piece : split(line, ',')) {
      if (piece.empty()) continue;
      if (piece.find('=') == std::string::npos && !entries.empty()) {
        entries.back() += "," + piece;
      } else {
        entries.push_back(piece);
      }
    }
    for (const auto& entry : entries) {
      const auto eq = entry.find('=');
      if (eq == std::string::npos) throw ConfigError(entry, "expected key=value, got '" + entry + "'");
      put(trim(entry.substr(0, eq)), trim(entry.substr(eq + 1)));
    }
  }
  for (const auto& [key, value] : overrides) put(key, value);

  auto has = [&](const char* key) { return values.count(key) > 0; };
  auto get = [&](const char* key) -> const std::string& { return values.at(key); };

  RunConfig cfg;
  if (!has("command")) throw ConfigError("command", "missing required key 'command'");
  cfg.command = command_from_string(get("command"));

  if (has("N")) {
    const long long n = to_integer("N", get("N"));
    if (n < 1 || n > 100000) throw ConfigError("N", "key 'N' must be a particle count >= 1");
    cfg.particles = static_cast<int>(n);
  }
  if (has("J")) {
    cfg.tunneling = to_double("J", get("J"));
    if (!(cfg.tunneling > 0.0)) throw ConfigError("J", "key 'J' must be > 0");
  }
  if (has("U") && has("Lambda")) {
    throw ConfigError("Lambda", "over-determined interaction: give exactly one of 'U' and 'Lambda'");
  }
  if (has("Lambda")) {
    cfg.lambda_given = true;
    cfg.lambda = to_double("Lambda", get("Lambda"));
    cfg.interaction = 2.0 * cfg.tunneling * cfg.lambda / cfg.particles;
  } else if (has("U")) {
    cfg.lambda_given = false;
    cfg.interaction = to_double("U", get("U"));
    cfg.lambda = cfg.interaction * cfg.particles / (2.0 * cfg.tunneling);
  } else {
    throw ConfigError("Lambda", "missing required key 'Lambda' (or 'U')");
  }

  auto positive = [&](const char* key, double& target) {
    if (!has(key)) return;
    target = to_double(key, get(key));
    if (!(target > 0.0)) throw ConfigError(key, std::string("key '") + key + "' must be > 0");
  };
  if (has("phi")) cfg.phi = to_double("phi", get("phi"));
  if (has("z")) {
    cfg.z = to_double("z", get("z"));
    if (cfg.z < -1.0 || cfg.z > 1.0) throw ConfigError("z", "key 'z' must lie in [-1, 1]");
  }
  if (has("tau")) {
    cfg.tau = to_double("tau", get("tau"));
    if (cfg.tau < 0.0) throw ConfigError("tau", "key 'tau' must be >= 0");
  }
  positive("window", cfg.window);
  positive("dt_sample", cfg.dt_sample);
  positive("dt", cfg.dt);
  positive("dt_frame", cfg.dt_frame);
  if (has("T")) {
    positive("T", cfg.t_end);
  } else {
    cfg.t_end = cfg.command == Command::Movie ? 3.0 : 3.5;
  }

  if (has("grid")) {
    const std::string& g = get("grid");
    const auto x = g.find('x');
    if (x == std::string::npos) throw ConfigError("grid", "key 'grid' expects NPHIxNZ, got '" + g + "'");
    cfg.grid.n_phi = static_cast<int>(to_integer("grid", g.substr(0, x)));
    cfg.grid.n_z = static_cast<int>(to_integer("grid", g.substr(x + 1)));
  }
  if (has("phi_range")) std::tie(cfg.grid.phi_min, cfg.grid.phi_max) = to_pair("phi_range", get("phi_range"));
  if (has("z_range")) std::tie(cfg.grid.z_min, cfg.grid.z_max) = to_pair("z_range", get("z_range"));
  try {
    cfg.grid.validate();
  } catch (const GridError& e) {
    throw ConfigError("grid", std::string("invalid grid: ") + e.what());
  }

  try {
    if (has("engine")) cfg.engine = engine_from_string(get("engine"));
  } catch (const DomainError& e) {
    throw ConfigError("engine", e.what());
  }
  if (has("observables")) {
    cfg.observables.clear();
    for (const auto& t : split(get("observables"), ',')) {
      try {
        cfg.observables.push_back(observable_from_tag(t));
      } catch (const DomainError& e) {
        throw ConfigError("observables", e.what());
      }
    }
    if (cfg.observables.empty()) throw ConfigError("observables", "key 'observables' is empty");
  }
  if (has("M")) {
    const long long m = to_integer("M", get("M"));
    if (m < 1) throw ConfigError("M", "key 'M' must be >= 1");
    cfg.ensemble_size = static_cast<int>(m);
  }
  if (has("seed")) {
    const long long s = to_integer("seed", get("seed"));
    if (s < 0) throw ConfigError("seed", "key 'seed' must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (has("workers")) {
    const long long w = to_integer("workers", get("workers"));
    if (w < 1) throw ConfigError("workers", "key 'workers' must be >= 1");
    cfg.workers = static_cast<int>(w);
  }
  if (has("out")) {
    cfg.out = get("out");
    if (cfg.out.empty()) throw ConfigError("out", "key 'out' must not be empty");
  }
  if (has("levels")) {
    for (const auto& t : split(get("levels"), ',')) cfg.levels.push_back(to_double("levels", t));
  }
  try {
    if (has("colormap")) cfg.colormap = colormap_from_string(get("colormap"));
  } catch (const DomainError& e) {
    throw ConfigError("colormap", e.what());
  }
  if (has("range")) {
    cfg.range = to_pair("range", get("range"));
    if (!(cfg.range->second > cfg.range->first)) throw ConfigError("range", "key 'range' needs lo < hi");
  }
  return cfg;
}

std::vector<std::string> to_arguments(const RunConfig& cfg) {
  std::vector<std::string> args{to_string(cfg.command)};
  auto flag = [&](const std::string& key, const std::string& value) {
    args.push_back("--" + key);
    args.push_back(value);
  };
  auto join = [](const auto& items, auto&& fmt) {
    std::string s;
    for (const auto& item : items) {
      if (!s.empty()) s += ',';
      s += fmt(item);
    }
    return s;
  };
  flag("N", std::to_string(cfg.particles));
  flag("J", format_shortest(cfg.tunneling));
  if (cfg.lambda_given) {
    flag("Lambda", format_shortest(cfg.lambda));
  } else {
    flag("U", format_shortest(cfg.interaction));
  }
  flag("phi", format_shortest(cfg.phi));
  flag("z", format_shortest(cfg.z));
  flag("tau", format_shortest(cfg.tau));
  flag("window", format_shortest(cfg.window));
  flag("dt_sample", format_shortest(cfg.dt_sample));
  flag("T", format_shortest(cfg.t_end));
  flag("dt", format_shortest(cfg.dt));
  flag("dt_frame", format_shortest(cfg.dt_frame));
  flag("grid", std::to_string(cfg.grid.n_phi) + "x" + std::to_string(cfg.grid.n_z));
  flag("phi_range", format_shortest(cfg.grid.phi_min) + "," + format_shortest(cfg.grid.phi_max));
  flag("z_range", format_shortest(cfg.grid.z_min) + "," + format_shortest(cfg.grid.z_max));
  flag("engine", to_string(cfg.engine));
  flag("observables", join(cfg.observables, [](Observable o) { return tag(o); }));
  flag("M", std::to_string(cfg.ensemble_size));
  flag("seed", std::to_string(cfg.seed));
  flag("out", cfg.out);
  if (!cfg.levels.empty()) flag("levels", join(cfg.levels, [](double v) { return format_shortest(v); }));
  flag("colormap", to_string(cfg.colormap));
  if (cfg.range) flag("range", format_shortest(cfg.range->first) + "," + format_shortest(cfg.range->second));
  return args;
}

std::string rerun_line(const RunConfig& cfg) {
  std::string line = "becdimer";
  for (const auto& a : to_arguments(cfg)) line += " " + a;
  return line;
}

}  // namespace becdimer
