#pragma once

#include <ostream>
#include <vector>

#include "becdimer/types.hpp"

namespace becdimer {

/// Vertices (phi, z).
using Polyline = std::vector<Eigen::Vector2d>;

struct ContourLevel {
  double level = 0.0;
  std::vector<Polyline> polylines;
};

/// Iso-lines of H_cl over the closed rectangle [0, 2 pi] x [-1, 1], sampled
/// on (phi_cells + 1) x (z_cells + 1) nodes and extracted by marching squares
/// with linear edge interpolation. Saddle cells are resolved by the cell
/// centre average. A level equal to the energy of a stable fixed point also
/// yields that point as a single-vertex polyline. Levels outside the range
/// of H_cl give no polylines. Requires at least 16 x 16 cells.
std::vector<ContourLevel> iso_energy_contours(double lambda, const std::vector<double>& levels, int phi_cells,
                                              int z_cells);

/// One polyline per blank-line separated block of "phi,z" rows.
void write_contours_csv(std::ostream& out, const std::vector<ContourLevel>& contours);

}  // namespace becdimer
