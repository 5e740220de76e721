#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "becdimer/gps.hpp"

namespace becdimer {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest decimal string that round-trips the double ("5", "0.025", "nan").
std::string format_shortest(double x);
/// 17 significant digits, "nan" for NaN.
std::string format_full(double x);

/// '#' header lines, then "phi,z,value" rows with phi as the outer index.
void write_field_csv(std::ostream& out, const FieldMap& f);
void write_field_csv(const FieldMap& f, const std::filesystem::path& path);

/// Inverse of write_field_csv: grid, observable, parameters and values.
FieldMap read_field_csv(std::istream& in);
FieldMap read_field_csv(const std::filesystem::path& path);

enum class Colormap { Viridis, Gray, Coolwarm };
std::string to_string(Colormap c);
Colormap colormap_from_string(const std::string& s);

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

/// Colour of undefined (NaN) cells.
inline constexpr Rgb kNanColor{255, 0, 255};

struct HeatmapImage {
  int width = 0;
  int height = 0;
  /// Row-major from the top row (z = z_max) down.
  std::vector<Rgb> pixels;
  Colormap colormap = Colormap::Viridis;
  double lo = 0.0;
  double hi = 1.0;

  Rgb at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)]; }
};

Rgb map_color(Colormap c, double t);

/// One pixel per cell; phi along x, z along y with z_max on top. Values are
/// clamped to [lo, hi]. Throws DomainError if hi <= lo.
HeatmapImage render_heatmap(const FieldMap& f, Colormap colormap, double lo, double hi);

/// Binary P6 portable pixmap, 8-bit channels.
void write_ppm(std::ostream& out, const HeatmapImage& image);
void write_heatmap(const FieldMap& f, Colormap colormap, double lo, double hi, const std::filesystem::path& path);

}  // namespace becdimer
