#pragma once

#include <string>

#include "hyp/tessellation.hpp"

namespace hyp {

// Poincare disk picture: unit boundary circle, sites as dots, Voronoi edges
// solid, Delaunay edges dashed, non-centered Delaunay edges highlighted.
std::string render_svg(const VoronoiComplex& v, const DelaunayComplex& d);

}  // namespace hyp
