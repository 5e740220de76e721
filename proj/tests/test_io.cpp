#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "becdimer/config.hpp"
#include "becdimer/field_io.hpp"
#include "becdimer/run.hpp"

using namespace becdimer;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("becdimer_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

FieldMap two_by_two() {
  FieldMap f;
  f.grid.n_phi = 2;
  f.grid.n_z = 2;
  f.lambda = 5.0;
  f.interaction = 2.5;
  f.tau = 1.0;
  f.values.resize(2, 2);
  f.values << 0.1, 1.0 / 3.0, std::nan(""), 0.9;
  return f;
}

RunConfig config(const std::string& text, const KeyValues& overrides = {}) { return parse_config(text, overrides); }

std::string config_error_key(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

// Splits a recorded rerun line back into flag overrides.
KeyValues overrides_from_rerun(const std::string& line) {
  std::istringstream in(line);
  std::string word, command;
  in >> word >> command;
  KeyValues kv{{"command", command}};
  std::string key, value;
  while (in >> key >> value) kv.emplace_back(key.substr(2), value);
  return kv;
}

std::string header_value(const std::string& text, const std::string& key) {
  const std::string tag = "# " + key + "=";
  const auto p = text.find(tag);
  if (p == std::string::npos) return "";
  const auto e = text.find('\n', p);
  return text.substr(p + tag.size(), e - p - tag.size());
}

}  // namespace

TEST_CASE("field csv layout and round trip") {
  const FieldMap f = two_by_two();
  std::ostringstream out;
  write_field_csv(out, f);
  const std::string text = out.str();
  CHECK(text.find("# Lambda=5\n") != std::string::npos);
  CHECK(text.find("# grid=2x2\n") != std::string::npos);
  CHECK(text.find("# version=") != std::string::npos);
  int rows = 0;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) rows += !line.empty() && line[0] != '#';
  CHECK(rows == 4);
  CHECK(text.find("0.33333333333333331") != std::string::npos);
  CHECK(text.find(",nan\n") != std::string::npos);
  CHECK(text.find('\r') == std::string::npos);

  std::istringstream in(text);
  const FieldMap g = read_field_csv(in);
  CHECK(g.grid.n_phi == 2);
  CHECK(g.lambda == 5.0);
  CHECK(*g.tau == 1.0);
  CHECK(g.values(0, 0) == f.values(0, 0));
  CHECK(g.values(0, 1) == f.values(0, 1));
  CHECK(std::isnan(g.values(1, 0)));
  CHECK(g.values(1, 1) == f.values(1, 1));

  std::ostringstream again;
  write_field_csv(again, g);
  CHECK(again.str() == text);

  std::istringstream truncated(text.substr(0, text.rfind('\n', text.size() - 2) + 1));
  CHECK_THROWS_AS(read_field_csv(truncated), IoError);
}

TEST_CASE("heatmap rendering") {
  FieldMap f = two_by_two();
  f.values.setConstant(0.7);
  const HeatmapImage img = render_heatmap(f, Colormap::Viridis, 0.0, 1.0);
  CHECK(img.width == 2);
  CHECK(img.height == 2);
  for (const Rgb& p : img.pixels) CHECK(p == img.pixels.front());
  CHECK_THROWS_AS(render_heatmap(f, Colormap::Viridis, 1.0, 1.0), DomainError);

  f.values.setConstant(1.0);
  const HeatmapImage top = render_heatmap(f, Colormap::Gray, 0.5, 1.0);
  for (const Rgb& p : top.pixels) CHECK(p == map_color(Colormap::Gray, 1.0));
  CHECK(map_color(Colormap::Gray, 1.0) == Rgb{255, 255, 255});
  CHECK(map_color(Colormap::Gray, 7.0) == map_color(Colormap::Gray, 1.0));

  f.values << 0.0, 1.0, 0.0, std::nan("");
  const HeatmapImage orient = render_heatmap(f, Colormap::Gray, 0.0, 1.0);
  // values(i, j): top row of the image is the largest z.
  CHECK(orient.pixels[0] == Rgb{255, 255, 255});
  CHECK(orient.pixels[1] == kNanColor);
  CHECK(orient.pixels[2] == Rgb{0, 0, 0});

  std::ostringstream out;
  write_ppm(out, orient);
  const std::string bytes = out.str();
  CHECK(bytes.rfind("P6\n2 2\n255\n", 0) == 0);
  CHECK(bytes.size() == std::string("P6\n2 2\n255\n").size() + 12);
}

TEST_CASE("configuration parsing") {
  const RunConfig a = config("command=scan\nN=40, J=10, Lambda=5\n");
  CHECK(a.interaction == doctest::Approx(2.5));
  CHECK(a.particles == 40);
  const RunConfig b = config("command=scan\nU=2.5 # interaction in 1/s\n");
  CHECK(b.lambda == doctest::Approx(5.0));
  CHECK_FALSE(b.lambda_given);

  CHECK(config_error_key("command=scan\nLambda=5, U=2.5\n") == "Lambda");
  CHECK(config_error_key("command=scan\nLambda=5\nspeed=3\n") == "speed");
  CHECK(config_error_key("Lambda=5\n") == "command");
  CHECK(config_error_key("command=scan\n") == "Lambda");
  CHECK(config_error_key("command=scan\nLambda=inf\n") == "Lambda");
  CHECK(config_error_key("command=scan\nLambda=5\ntau=nan\n") == "tau");
  CHECK(config_error_key("command=scan\nLambda=5\nJ=abc\n") == "J");
  CHECK(config_error_key("command=scan\nLambda=5\ngrid=1x4\n") == "grid");
  CHECK(config_error_key("command=teleport\nLambda=5\n") == "command");
  CHECK(config_error_key("command=scan\nLambda=5\nobservables=c,purity\n") == "observables");

  const RunConfig from_file = config("command=minscan\nN=40\nJ=10\nLambda=5\nwindow=0.5\ngrid=20x11\nrange=0.5,1\n");
  const RunConfig from_flags = config("", {{"command", "minscan"}, {"N", "40"}, {"J", "10"}, {"Lambda", "5"},
                                           {"window", "0.5"}, {"grid", "20x11"}, {"range", "0.5,1"}});
  CHECK(to_arguments(from_file) == to_arguments(from_flags));
  CHECK(from_file.range->first == 0.5);

  const RunConfig over = config("command=scan\nLambda=5\nN=20\n", {{"N", "30"}});
  CHECK(over.particles == 30);
  CHECK(over.interaction == doctest::Approx(2.0 * 10.0 * 5.0 / 30.0));

  const RunConfig obs = config("command=scan\nLambda=5\nobservables=c,E,xi2\n");
  CHECK(obs.observables.size() == 3);

  const RunConfig round = config("", overrides_from_rerun(rerun_line(obs)));
  CHECK(rerun_line(round) == rerun_line(obs));
}

TEST_CASE("run: scan outputs are deterministic and self-describing") {
  const fs::path dir = scratch("scan");
  const std::string prefix = (dir / "a").string();
  const RunConfig cfg = config("command=scan\nLambda=5\ngrid=8x5\nobservables=c,E,xi2,A_max\nout=" + prefix + "\n");
  std::ostringstream log;
  const RunResult r = run(cfg, log);
  REQUIRE(r.exit_code == kExitSuccess);
  CHECK(r.files.size() == 8);
  const std::string first = slurp(prefix + "_c.csv");
  CHECK(first.find("# Lambda=5\n") != std::string::npos);
  CHECK(first.find("# command=scan\n") != std::string::npos);
  CHECK(slurp(prefix + "_c.ppm").rfind("P6\n8 5\n255\n", 0) == 0);

  RunConfig threaded = cfg;
  threaded.workers = 3;
  REQUIRE(run(threaded, log).exit_code == kExitSuccess);
  CHECK(slurp(prefix + "_c.csv") == first);

  const std::string rerun = header_value(first, "rerun");
  REQUIRE_FALSE(rerun.empty());
  const std::string xi_before = slurp(prefix + "_xi2.csv");
  fs::remove(prefix + "_c.csv");
  fs::remove(prefix + "_xi2.csv");
  REQUIRE(run(config("", overrides_from_rerun(rerun)), log).exit_code == kExitSuccess);
  CHECK(slurp(prefix + "_c.csv") == first);
  CHECK(slurp(prefix + "_xi2.csv") == xi_before);
  fs::remove_all(dir);
}

TEST_CASE("run: tables for every command") {
  const fs::path dir = scratch("tables");
  const std::string p = (dir / "t").string();
  std::ostringstream log;

  REQUIRE(run(config("command=evolve\nLambda=5\nz=0.2\nT=0.1\nout=" + p), log).exit_code == 0);
  const std::string ev = slurp(p + "_evolve.csv");
  CHECK(ev.find("# columns=t,c,E,E_sc,xi2,z\n") != std::string::npos);
  int rows = 0;
  std::istringstream lines(ev);
  std::string line;
  while (std::getline(lines, line)) rows += !line.empty() && line[0] != '#';
  CHECK(rows == 11);

  REQUIRE(run(config("command=fixedpoints\nLambda=5\nout=" + p), log).exit_code == 0);
  const std::string fp = slurp(p + "_fixedpoints.csv");
  CHECK(fp.find("hyperbolic") != std::string::npos);
  CHECK(fp.find("0.9797958971132712") != std::string::npos);
  CHECK(log.str().find("regime: Josephson-with-running-phase-ST") != std::string::npos);

  REQUIRE(run(config("command=contours\nLambda=5\ngrid=64x32\nout=" + p), log).exit_code == 0);
  CHECK(slurp(p + "_contours.csv").find("# level=1 polyline=0") != std::string::npos);

  REQUIRE(run(config("command=minscan\nLambda=5\ngrid=4x3\nwindow=0.1\nout=" + p), log).exit_code == 0);
  CHECK(slurp(p + "_c_min.csv").find("# window=0.1\n") != std::string::npos);

  REQUIRE(run(config("command=movie\nLambda=5\ngrid=4x3\nT=0.1\nout=" + p), log).exit_code == 0);
  CHECK(fs::exists(p + "_c_f0004.csv"));
  CHECK(fs::exists(p + "_c_f0004.ppm"));
  CHECK_FALSE(fs::exists(p + "_c_f0005.csv"));

  REQUIRE(run(config("command=compare\nLambda=5\nphi=0\ngrid=2x5\nwindow=0.05\nM=200\nout=" + p), log).exit_code == 0);
  CHECK(slurp(p + "_compare.csv").find("# columns=z,c_quantum,c_lida,c_meanfield\n") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("run: failures exit nonzero and remove partial output") {
  const fs::path dir = scratch("fail");
  const std::string p = (dir / "f").string();
  fs::create_directories(p + "_c.ppm");  // the heatmap cannot be opened for writing
  std::ostringstream log;
  const RunResult r = run(config("command=scan\nLambda=5\ngrid=4x3\nout=" + p), log);
  CHECK(r.exit_code == kExitNumericalFailure);
  CHECK_FALSE(fs::exists(p + "_c.csv"));
  CHECK(log.str().find("error:") != std::string::npos);

  const RunResult movie_bad = run(config("command=movie\nLambda=5\ngrid=4x3\nobservables=c,E\nout=" + p), log);
  CHECK(movie_bad.exit_code == kExitConfigError);
  fs::remove_all(dir);
}
