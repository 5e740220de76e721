#include "becdimer/contours.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <utility>

#include "becdimer/meanfield.hpp"

namespace becdimer {

namespace {

/// Joins segments that share exactly identical end points into polylines.
class SegmentChainer {
 public:
  void add(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    if (a == b) return;
    const int ia = vertex(a);
    const int ib = vertex(b);
    segments_.emplace_back(ia, ib);
    const int s = static_cast<int>(segments_.size()) - 1;
    incident_[static_cast<std::size_t>(ia)].push_back(s);
    incident_[static_cast<std::size_t>(ib)].push_back(s);
  }

  std::vector<Polyline> chain() {
    std::vector<bool> used(segments_.size(), false);
    std::vector<Polyline> out;
    auto walk = [&](int start) {
      Polyline line{vertices_[static_cast<std::size_t>(start)]};
      int current = start;
      for (;;) {
        int next_segment = -1;
        for (int s : incident_[static_cast<std::size_t>(current)]) {
          if (!used[static_cast<std::size_t>(s)]) {
            next_segment = s;
            break;
          }
        }
        if (next_segment < 0) break;
        used[static_cast<std::size_t>(next_segment)] = true;
        const auto [a, b] = segments_[static_cast<std::size_t>(next_segment)];
        current = (a == current) ? b : a;
        line.push_back(vertices_[static_cast<std::size_t>(current)]);
      }
      out.push_back(std::move(line));
    };
    // Open chains start at odd-degree vertices; whatever remains is closed.
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      while (incident_[v].size() % 2 == 1 && has_unused(incident_[v], used)) walk(static_cast<int>(v));
    }
    for (std::size_t s = 0; s < segments_.size(); ++s) {
      if (!used[s]) walk(segments_[s].first);
    }
    return out;
  }

 private:
  static bool has_unused(const std::vector<int>& segs, const std::vector<bool>& used) {
    for (int s : segs) {
      if (!used[static_cast<std::size_t>(s)]) return true;
    }
    return false;
  }

  int vertex(const Eigen::Vector2d& p) {
    const auto key = std::make_pair(p.x(), p.y());
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    const int id = static_cast<int>(vertices_.size());
    index_.emplace(key, id);
    vertices_.push_back(p);
    incident_.emplace_back();
    return id;
  }

  std::map<std::pair<double, double>, int> index_;
  std::vector<Eigen::Vector2d> vertices_;
  std::vector<std::vector<int>> incident_;
  std::vector<std::pair<int, int>> segments_;
};

}  // namespace

std::vector<ContourLevel> iso_energy_contours(double lambda, const std::vector<double>& levels, int phi_cells,
                                              int z_cells) {
  if (phi_cells < 16 || z_cells < 16) throw DomainError("iso_energy_contours: grid must be at least 16x16 cells");
  const FixedPointSet fps = fixed_points(lambda);

  const int np = phi_cells + 1;
  const int nz = z_cells + 1;
  std::vector<double> phis(static_cast<std::size_t>(np));
  std::vector<double> zs(static_cast<std::size_t>(nz));
  for (int i = 0; i < np; ++i) phis[static_cast<std::size_t>(i)] = kTwoPi * i / phi_cells;
  for (int j = 0; j < nz; ++j) zs[static_cast<std::size_t>(j)] = -1.0 + 2.0 * j / z_cells;
  Eigen::MatrixXd h(np, nz);
  for (int i = 0; i < np; ++i) {
    for (int j = 0; j < nz; ++j) {
      const double z = zs[static_cast<std::size_t>(j)];
      h(i, j) = lambda * z * z / 2.0 - std::sqrt(std::max(0.0, 1.0 - z * z)) * std::cos(phis[static_cast<std::size_t>(i)]);
    }
  }
  auto node = [&](int i, int j) {
    return Eigen::Vector2d(phis[static_cast<std::size_t>(i)], zs[static_cast<std::size_t>(j)]);
  };

  std::vector<ContourLevel> out;
  out.reserve(levels.size());
  for (double level : levels) {
    SegmentChainer chainer;
    auto crossing = [&](int i0, int j0, int i1, int j1) {
      // Interpolate in a fixed direction so neighbouring cells agree bit for bit.
      if (std::make_pair(i0, j0) > std::make_pair(i1, j1)) {
        std::swap(i0, i1);
        std::swap(j0, j1);
      }
      const double va = h(i0, j0);
      const double vb = h(i1, j1);
      const double t = (level - va) / (vb - va);
      return Eigen::Vector2d(node(i0, j0) + t * (node(i1, j1) - node(i0, j0)));
    };
    for (int i = 0; i < phi_cells; ++i) {
      for (int j = 0; j < z_cells; ++j) {
        // Corners counter-clockwise from (i, j).
        const int ci[4] = {i, i + 1, i + 1, i};
        const int cj[4] = {j, j, j + 1, j + 1};
        bool inside[4];
        for (int k = 0; k < 4; ++k) inside[k] = h(ci[k], cj[k]) >= level;
        // Edge k joins corner k and corner k+1: bottom, right, top, left.
        Eigen::Vector2d points[4];
        bool cut[4];
        int cuts = 0;
        for (int k = 0; k < 4; ++k) {
          const int k1 = (k + 1) % 4;
          cut[k] = inside[k] != inside[k1];
          if (cut[k]) {
            points[k] = crossing(ci[k], cj[k], ci[k1], cj[k1]);
            ++cuts;
          }
        }
        if (cuts == 2) {
          int a = -1, b = -1;
          for (int k = 0; k < 4; ++k) {
            if (cut[k]) (a < 0 ? a : b) = k;
          }
          chainer.add(points[a], points[b]);
        } else if (cuts == 4) {
          const double centre = 0.25 * (h(i, j) + h(i + 1, j) + h(i + 1, j + 1) + h(i, j + 1));
          const bool centre_inside = centre >= level;
          // Separate the corners whose state differs from the centre.
          const bool isolate_odd = centre_inside == inside[0];
          if (isolate_odd) {
            chainer.add(points[0], points[1]);  // around corner 1
            chainer.add(points[2], points[3]);  // around corner 3
          } else {
            chainer.add(points[3], points[0]);  // around corner 0
            chainer.add(points[1], points[2]);  // around corner 2
          }
        }
      }
    }
    ContourLevel contour{level, chainer.chain()};
    for (const auto& fp : fps) {
      if (fp.stability != Stability::StableCenter) continue;
      const double e = h_cl(fp.point, lambda);
      if (std::abs(e - level) <= 1e-12 * std::max(1.0, std::abs(level))) {
        contour.polylines.push_back(Polyline{Eigen::Vector2d(fp.point.phi(), fp.point.z())});
      }
    }
    out.push_back(std::move(contour));
  }
  return out;
}

void write_contours_csv(std::ostream& out, const std::vector<ContourLevel>& contours) {
  char buf[64];
  bool first = true;
  for (const auto& c : contours) {
    for (std::size_t k = 0; k < c.polylines.size(); ++k) {
      if (!first) out << '\n';
      first = false;
      std::snprintf(buf, sizeof buf, "%.17g", c.level);
      out << "# level=" << buf << " polyline=" << k << '\n';
      for (const auto& v : c.polylines[k]) {
        std::snprintf(buf, sizeof buf, "%.17g,", v.x());
        out << buf;
        std::snprintf(buf, sizeof buf, "%.17g", v.y());
        out << buf << '\n';
      }
    }
  }
}

}  // namespace becdimer
