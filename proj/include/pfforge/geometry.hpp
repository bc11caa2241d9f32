#pragma once

#include <cstddef>
#include <vector>

#include "pfforge/rational.hpp"

namespace pfforge::geometry {

using Point = ComplexRational;

/// Sign of the cross product (b - a) x (c - a): +1 left turn, -1 right, 0 collinear.
int orientation(const Point& a, const Point& b, const Point& c);

/// Closed segments [a,b] and [c,d] share at least one point.
bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d);

/// Twice the signed area; positive for counter-clockwise vertex order.
Rational signed_area2(const std::vector<Point>& vertices);

/// Throws malformed_polyline unless the closed polyline has >= 3 vertices,
/// no repeated consecutive vertices, nonzero area, and no self-intersections.
void check_simple_polygon(const std::vector<Point>& vertices);

enum class Location { inside, boundary, outside };

/// Exact point location against a simple closed polygon.
Location locate(const Point& p, const std::vector<Point>& vertices);

/// Closest point of the segment [a,b] to p (exact rational projection).
Point nearest_on_segment(const Point& p, const Point& a, const Point& b);

struct NearestPoint {
  Point point;
  Rational dist2;
  std::size_t edge = 0;  ///< edge i joins vertex i and vertex i+1 (cyclic)
};

/// Nearest boundary point; ties resolve to the lowest edge index.
NearestPoint nearest_on_boundary(const Point& p, const std::vector<Point>& vertices);

}  // namespace pfforge::geometry
