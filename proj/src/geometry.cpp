#include "pfforge/geometry.hpp"

#include <algorithm>

#include "pfforge/error.hpp"

namespace pfforge::geometry {

namespace {

Rational cross(const Point& u, const Point& v) { return u.re * v.im - u.im * v.re; }
Rational dot(const Point& u, const Point& v) { return u.re * v.re + u.im * v.im; }

// p lies on segment [a,b], given that a, b, p are collinear.
bool within_box(const Point& a, const Point& b, const Point& p) {
  return std::min(a.re, b.re) <= p.re && p.re <= std::max(a.re, b.re) &&
         std::min(a.im, b.im) <= p.im && p.im <= std::max(a.im, b.im);
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  return orientation(a, b, p) == 0 && within_box(a, b, p);
}

}  // namespace

int orientation(const Point& a, const Point& b, const Point& c) {
  return sgn(cross(b - a, c - a));
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && within_box(a, b, c)) return true;
  if (o2 == 0 && within_box(a, b, d)) return true;
  if (o3 == 0 && within_box(c, d, a)) return true;
  if (o4 == 0 && within_box(c, d, b)) return true;
  return false;
}

Rational signed_area2(const std::vector<Point>& v) {
  Rational area = 0;
  for (std::size_t i = 0; i < v.size(); ++i) area += cross(v[i], v[(i + 1) % v.size()]);
  return area;
}

void check_simple_polygon(const std::vector<Point>& v) {
  const std::size_t m = v.size();
  if (m < 3) throw Error(ErrorCode::malformed_polyline, "polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < m; ++i) {
    if (v[i] == v[(i + 1) % m]) {
      throw Error(ErrorCode::malformed_polyline, "repeated consecutive vertex " + std::to_string(i));
    }
  }
  if (signed_area2(v) == 0) throw Error(ErrorCode::malformed_polyline, "polygon has zero area");
  for (std::size_t i = 0; i < m; ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % m];
    for (std::size_t j = i + 1; j < m; ++j) {
      const Point& c = v[j];
      const Point& d = v[(j + 1) % m];
      const bool next = j == i + 1;
      const bool wraps = i == 0 && j == m - 1;
      if (next || wraps) {
        // Adjacent edges share exactly their common vertex; a fold-back overlaps.
        const Point& shared = next ? b : a;
        const Point& far_self = next ? a : b;
        const Point& far_other = next ? d : c;
        if (orientation(far_self, shared, far_other) == 0 &&
            dot(far_self - shared, far_other - shared) > 0) {
          throw Error(ErrorCode::malformed_polyline,
                      "edges " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
        }
        continue;
      }
      if (segments_intersect(a, b, c, d)) {
        throw Error(ErrorCode::malformed_polyline,
                    "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      }
    }
  }
}

Location locate(const Point& p, const std::vector<Point>& v) {
  const std::size_t m = v.size();
  bool inside = false;
  for (std::size_t i = 0; i < m; ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % m];
    if (on_segment(p, a, b)) return Location::boundary;
    // Half-open crossing rule on the horizontal ray to +infinity.
    if ((a.im > p.im) != (b.im > p.im)) {
      const Rational x = a.re + (p.im - a.im) * (b.re - a.re) / (b.im - a.im);
      if (x > p.re) inside = !inside;
    }
  }
  return inside ? Location::inside : Location::outside;
}

Point nearest_on_segment(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const Rational len2 = ab.norm2();
  Rational t = dot(p - a, ab) / len2;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return a + t * ab;
}

NearestPoint nearest_on_boundary(const Point& p, const std::vector<Point>& v) {
  NearestPoint best;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Point q = nearest_on_segment(p, v[i], v[(i + 1) % v.size()]);
    Rational d2 = (q - p).norm2();
    if (i == 0 || d2 < best.dist2) {
      best.point = std::move(q);
      best.dist2 = std::move(d2);
      best.edge = i;
    }
  }
  return best;
}

}  // namespace pfforge::geometry
