#ifndef GPTCOMPAT_SVG_HPP
#define GPTCOMPAT_SVG_HPP

#include "gptcompat/order_geometry.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gptcompat {

/// Boundary of a 2-D space in counter-clockwise order starting from the
/// lexicographically smallest vertex. Collinear spaces come back as a
/// lexicographically sorted vertex list.
std::vector<Point> polygon_boundary(const StateSpace& space);

/// Segment {x in K : f(x) = level}, exact. nullopt when the level set misses
/// K or f equals level on all of K. A single touching vertex gives a
/// degenerate segment.
std::optional<std::pair<Point, Point>> level_segment(const AffineFunctional& f, const Rational& level);

/// SVG document with the polygon, exact vertex labels and the level lines
/// f = 0, 1/2, 1 of every effect. Throws GeometryError unless dimension is 2.
std::string render_svg(const StateSpace& space, const std::vector<AffineFunctional>& effects);

} // namespace gptcompat

#endif
