#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <vector>

#include "splinezero/rational.hpp"

namespace splinezero::geometry {

struct Point {
  Rational x;
  Rational y;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Twice the signed area of (o, a, b); positive for a left turn.
inline Rational cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Counterclockwise convex hull starting at the lexicographically smallest
/// point (monotone chain). Collinear points are dropped, so consecutive
/// vertices always turn strictly left.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p).sign() <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]).sign() <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

/// Strict interior test for a counterclockwise convex polygon; points on the
/// boundary are outside.
inline bool strictly_inside(const std::vector<Point>& ccw, const Point& p) {
  if (ccw.size() < 3) return false;
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    if (cross(ccw[i], ccw[(i + 1) % ccw.size()], p).sign() <= 0) return false;
  }
  return true;
}

/// Absolute area (shoelace).
inline Rational area(const std::vector<Point>& poly) {
  if (poly.size() < 3) return Rational(0);
  Rational twice;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % poly.size()];
    twice += a.x * b.y - a.y * b.x;
  }
  return twice.abs() / Rational(2);
}

/// Keeps the part of the polygon where a*x + b*y + c >= 0 (Sutherland-Hodgman
/// against a single half-plane).
inline std::vector<Point> clip(const std::vector<Point>& poly, const Rational& a,
                               const Rational& b, const Rational& c) {
  std::vector<Point> out;
  if (poly.empty()) return out;
  auto value = [&](const Point& p) { return a * p.x + b * p.y + c; };
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& cur = poly[i];
    const Point& nxt = poly[(i + 1) % poly.size()];
    const Rational vc = value(cur);
    const Rational vn = value(nxt);
    if (vc.sign() >= 0) out.push_back(cur);
    if ((vc.sign() > 0 && vn.sign() < 0) || (vc.sign() < 0 && vn.sign() > 0)) {
      const Rational t = vc / (vc - vn);
      out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
    }
  }
  return out;
}

}  // namespace splinezero::geometry
