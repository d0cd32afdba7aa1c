#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "otdp/estimator.hpp"
#include "otdp/grid.hpp"

namespace otdp {

/// CSV with header x1..xd, one point per row, LF line endings.
void write_points_csv(std::ostream& os, const PointSet& points);
PointSet read_points_csv(std::istream& is);

/// CSV with header x1..xd,t1..td: grid point coordinates then map
/// components, one grid point per row in linear-index order.
void write_map_csv(std::ostream& os, const GridVectorField& field);

/// CSV with header x1..xd,density.
void write_density_csv(std::ostream& os, const GridPotential& density);

std::string format_double(double v);

}  // namespace otdp
