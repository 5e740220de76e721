#include "becdimer/field_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace becdimer {

namespace {

double parse_double(const std::string& s, const std::string& what) {
  if (s == "nan") return std::nan("");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw IoError("field csv: malformed number '" + s + "' in " + what);
  return v;
}

std::pair<double, double> parse_pair(const std::string& s, const std::string& what) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw IoError("field csv: expected 'a,b' for " + what);
  return {parse_double(s.substr(0, comma), what), parse_double(s.substr(comma + 1), what)};
}

}  // namespace

std::string format_shortest(double x) {
  if (std::isnan(x)) return "nan";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string format_full(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_field_csv(std::ostream& out, const FieldMap& f) {
  const GridSpec& g = f.grid;
  out << "# format=becdimer-fieldmap\n";
  out << "# version=" << kVersion << '\n';
  out << "# observable=" << tag(f.observable) << '\n';
  out << "# engine=" << to_string(f.engine) << '\n';
  out << "# N=" << f.particles << '\n';
  out << "# J=" << format_shortest(f.tunneling) << '\n';
  out << "# U=" << format_shortest(f.interaction) << '\n';
  out << "# Lambda=" << format_shortest(f.lambda) << '\n';
  out << "# grid=" << g.n_phi << 'x' << g.n_z << '\n';
  out << "# phi_range=" << format_shortest(g.phi_min) << ',' << format_shortest(g.phi_max) << '\n';
  out << "# z_range=" << format_shortest(g.z_min) << ',' << format_shortest(g.z_max) << '\n';
  if (f.tau) out << "# tau=" << format_shortest(*f.tau) << '\n';
  if (f.window) out << "# window=" << format_shortest(*f.window) << '\n';
  if (f.dt_sample) out << "# dt_sample=" << format_shortest(*f.dt_sample) << '\n';
  if (f.lida) {
    out << "# M=" << f.lida->ensemble_size << '\n';
    out << "# seed=" << f.lida->seed << '\n';
    out << "# dt=" << format_shortest(f.lida->dt) << '\n';
  }
  for (const auto& [key, value] : f.extra) out << "# " << key << '=' << value << '\n';
  out << "# columns=phi,z,value\n";
  for (int i = 0; i < g.n_phi; ++i) {
    const std::string phi = format_full(g.phi(i));
    for (int j = 0; j < g.n_z; ++j) {
      out << phi << ',' << format_full(g.z(j)) << ',' << format_full(f.values(i, j)) << '\n';
    }
  }
}

void write_field_csv(const FieldMap& f, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_field_csv(out, f);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

FieldMap read_field_csv(std::istream& in) {
  std::map<std::string, std::string> header;
  std::vector<std::pair<std::string, std::string>> ordered;
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos || line.size() < 2) continue;
      std::string key = line.substr(2, eq - 2);
      std::string value = line.substr(eq + 1);
      header[key] = value;
      ordered.emplace_back(std::move(key), std::move(value));
      continue;
    }
    const auto last = line.rfind(',');
    if (last == std::string::npos) throw IoError("field csv: malformed data row '" + line + "'");
    values.push_back(parse_double(line.substr(last + 1), "data row"));
  }

  auto need = [&](const std::string& key) -> const std::string& {
    auto it = header.find(key);
    if (it == header.end()) throw IoError("field csv: missing header '" + key + "'");
    return it->second;
  };

  FieldMap f;
  const std::string& grid = need("grid");
  const auto x = grid.find('x');
  if (x == std::string::npos) throw IoError("field csv: malformed grid '" + grid + "'");
  f.grid.n_phi = std::stoi(grid.substr(0, x));
  f.grid.n_z = std::stoi(grid.substr(x + 1));
  std::tie(f.grid.phi_min, f.grid.phi_max) = parse_pair(need("phi_range"), "phi_range");
  std::tie(f.grid.z_min, f.grid.z_max) = parse_pair(need("z_range"), "z_range");
  f.observable = observable_from_tag(need("observable"));
  f.engine = engine_from_string(need("engine"));
  f.particles = std::stoi(need("N"));
  f.tunneling = parse_double(need("J"), "J");
  f.interaction = parse_double(need("U"), "U");
  f.lambda = parse_double(need("Lambda"), "Lambda");
  if (header.count("tau")) f.tau = parse_double(header["tau"], "tau");
  if (header.count("window")) f.window = parse_double(header["window"], "window");
  if (header.count("dt_sample")) f.dt_sample = parse_double(header["dt_sample"], "dt_sample");
  if (header.count("M")) {
    LidaOptions lida;
    lida.ensemble_size = std::stoi(header["M"]);
    lida.seed = std::stoull(need("seed"));
    lida.dt = parse_double(need("dt"), "dt");
    f.lida = lida;
  }
  static const char* known[] = {"format", "version", "observable", "engine", "N", "J", "U", "Lambda", "grid",
                                "phi_range", "z_range", "tau", "window", "dt_sample", "M", "seed", "dt", "columns"};
  for (auto& [key, value] : ordered) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) f.extra.emplace_back(key, value);
  }

  f.grid.validate();
  if (values.size() != f.grid.cells()) {
    throw IoError("field csv: expected " + std::to_string(f.grid.cells()) + " data rows, found " +
                  std::to_string(values.size()));
  }
  f.values.resize(f.grid.n_phi, f.grid.n_z);
  std::size_t k = 0;
  for (int i = 0; i < f.grid.n_phi; ++i) {
    for (int j = 0; j < f.grid.n_z; ++j) f.values(i, j) = values[k++];
  }
  return f;
}

FieldMap read_field_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return read_field_csv(in);
}

std::string to_string(Colormap c) {
  switch (c) {
    case Colormap::Viridis: return "viridis";
    case Colormap::Gray: return "gray";
    case Colormap::Coolwarm: return "coolwarm";
  }
  return "?";
}

Colormap colormap_from_string(const std::string& s) {
  if (s == "viridis") return Colormap::Viridis;
  if (s == "gray") return Colormap::Gray;
  if (s == "coolwarm") return Colormap::Coolwarm;
  throw DomainError("unknown colormap '" + s + "' (expected viridis, gray or coolwarm)");
}

Rgb map_color(Colormap c, double t) {
  using Stop = std::array<double, 3>;
  static const std::array<Stop, 5> viridis = {
      {{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  static const std::array<Stop, 2> gray = {{{0, 0, 0}, {255, 255, 255}}};
  static const std::array<Stop, 3> coolwarm = {{{59, 76, 192}, {221, 221, 221}, {180, 4, 38}}};

  auto lerp = [t](const auto& stops) {
    const double x = std::clamp(t, 0.0, 1.0) * static_cast<double>(stops.size() - 1);
    const auto k = std::min(static_cast<std::size_t>(x), stops.size() - 2);
    const double w = x - static_cast<double>(k);
    Rgb out;
    std::uint8_t* ch[3] = {&out.r, &out.g, &out.b};
    for (int a = 0; a < 3; ++a) {
      const double v = (1.0 - w) * stops[k][static_cast<std::size_t>(a)] + w * stops[k + 1][static_cast<std::size_t>(a)];
      *ch[a] = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
    }
    return out;
  };
  switch (c) {
    case Colormap::Viridis: return lerp(viridis);
    case Colormap::Gray: return lerp(gray);
    case Colormap::Coolwarm: return lerp(coolwarm);
  }
  return {};
}

HeatmapImage render_heatmap(const FieldMap& f, Colormap colormap, double lo, double hi) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("heatmap: degenerate colour range [" + format_shortest(lo) + ", " + format_shortest(hi) + "]");
  }
  HeatmapImage img;
  img.width = f.grid.n_phi;
  img.height = f.grid.n_z;
  img.colormap = colormap;
  img.lo = lo;
  img.hi = hi;
  img.pixels.resize(f.grid.cells());
  for (int y = 0; y < img.height; ++y) {
    const int j = img.height - 1 - y;
    for (int x = 0; x < img.width; ++x) {
      const double v = f.values(x, j);
      img.pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width) + static_cast<std::size_t>(x)] =
          std::isnan(v) ? kNanColor : map_color(colormap, (v - lo) / (hi - lo));
    }
  }
  return img;
}

void write_ppm(std::ostream& out, const HeatmapImage& image) {
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  for (const Rgb& p : image.pixels) {
    const char rgb[3] = {static_cast<char>(p.r), static_cast<char>(p.g), static_cast<char>(p.b)};
    out.write(rgb, 3);
  }
}

void write_heatmap(const FieldMap& f, Colormap colormap, double lo, double hi, const std::filesystem::path& path) {
  const HeatmapImage img = render_heatmap(f, colormap, lo, hi);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_ppm(out, img);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace becdimer
