#pragma once

// Independent reference computations for the test suites. None of these
// share code paths with the routines they check.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "splinezero/matrix.hpp"
#include "splinezero/polynomial.hpp"
#include "splinezero/rational.hpp"

namespace oracle {

using splinezero::Polynomial;
using splinezero::Rational;
using splinezero::RationalMatrix;

/// Laplace expansion along the first row.
inline Rational cofactor_determinant(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return Rational(1);
  if (n == 1) return a(0, 0);
  Rational det;
  for (std::size_t c = 0; c < n; ++c) {
    RationalMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == c) continue;
        minor(r - 1, cc++) = a(r, k);
      }
    }
    const Rational term = a(0, c) * cofactor_determinant(minor);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

/// Plain power-sum evaluation (no Horner).
inline Rational power_sum(const Polynomial& p, const Rational& x) {
  Rational acc, power(1);
  for (const auto& c : p.coefficients()) {
    acc += c * power;
    power *= x;
  }
  return acc;
}

/// Sign changes on a uniform grid of the given width across [a, b] plus grid
/// points where p vanishes exactly. Accurate when roots are simple and farther
/// apart than the width.
inline int grid_root_count(const Polynomial& p, const Rational& a, const Rational& b,
                           const Rational& width) {
  int count = 0;
  Rational x = a;
  int last = power_sum(p, x).sign();
  if (last == 0) ++count;
  while (x < b) {
    x += width;
    if (b < x) x = b;
    const int s = power_sum(p, x).sign();
    if (s == 0) {
      ++count;
    } else if (last != 0 && s != last) {
      ++count;
    }
    last = s;
  }
  return count;
}

struct Point {
  Rational x, y;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Jarvis march over all points; counterclockwise, collinear points dropped,
/// starting from the lexicographically smallest point.
inline std::vector<Point> gift_wrap(const std::vector<Point>& pts) {
  auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  auto dist2 = [](const Point& a, const Point& b) {
    return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
  };
  std::size_t start = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].x < pts[start].x || (pts[i].x == pts[start].x && pts[i].y < pts[start].y)) start = i;
  }
  std::vector<Point> hull;
  Point current = pts[start];
  do {
    hull.push_back(current);
    Point next = pts[0] == current ? pts[1 % pts.size()] : pts[0];
    for (const auto& p : pts) {
      if (p == current) continue;
      const int turn = cross(current, next, p).sign();
      // Prefer clockwise-most candidates; among collinear, the farthest.
      if (turn < 0 || (turn == 0 && dist2(current, next) < dist2(current, p))) next = p;
    }
    current = next;
  } while (!(current == hull.front()) && hull.size() <= pts.size());
  return hull;
}

/// Deterministic generator shared by the property tests.
inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline long uniform(std::mt19937_64& g, long lo, long hi) {
  return lo + static_cast<long>(g() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Rational small_rational(std::mt19937_64& g, long num_bound = 8, long den_bound = 4) {
  const long d = uniform(g, 1, den_bound);
  return Rational(splinezero::Integer(uniform(g, -num_bound, num_bound)), splinezero::Integer(d));
}

}  // namespace oracle
