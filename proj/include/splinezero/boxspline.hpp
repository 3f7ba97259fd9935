#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "splinezero/bspline.hpp"
#include "splinezero/errors.hpp"
#include "splinezero/geometry.hpp"
#include "splinezero/matrix.hpp"
#include "splinezero/rational.hpp"

namespace splinezero {

using RationalVector = std::vector<Rational>;

/// A list X = (a_1, ..., a_m) of non-zero integer vectors in Z^s, s in {1, 2},
/// spanning R^s. Stored as the s x m matrix whose columns are the vectors.
class VectorConfig {
 public:
  explicit VectorConfig(IntegerMatrix columns) : x_(std::move(columns)) {
    if (x_.rows() < 1 || x_.rows() > 2) {
      throw DimensionError("vector configurations live in dimension 1 or 2");
    }
    for (std::size_t c = 0; c < x_.cols(); ++c) {
      bool nonzero = false;
      for (std::size_t r = 0; r < x_.rows(); ++r) nonzero |= x_(r, c) != 0;
      if (!nonzero) throw RankError("zero vector in configuration");
    }
    if (x_.cols() < x_.rows()) throw RankError("fewer vectors than dimensions");
    lattice_ = lattice_basis(x_);  // throws RankError when not spanning
  }

  /// "1,0;1,1;0,1": vectors separated by ';', components by ','.
  static VectorConfig parse(std::string_view text);

  std::size_t dimension() const { return x_.rows(); }
  std::size_t size() const { return x_.cols(); }
  const IntegerMatrix& matrix() const { return x_; }
  /// Basis of the lattice generated by X.
  const IntegerMatrix& lattice() const { return lattice_; }

  /// Sum of all vectors, the centre shift of the conjecture matrix.
  RationalVector sum() const {
    RationalVector out(dimension());
    for (std::size_t c = 0; c < size(); ++c) {
      for (std::size_t r = 0; r < dimension(); ++r) out[r] += Rational(x_(r, c));
    }
    return out;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t c = 0; c < size(); ++c) {
      if (c > 0) out += ";";
      for (std::size_t r = 0; r < dimension(); ++r) {
        if (r > 0) out += ",";
        out += x_(r, c).get_str();
      }
    }
    return out;
  }

 private:
  IntegerMatrix x_;
  IntegerMatrix lattice_;
};

inline VectorConfig VectorConfig::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto split = [](std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
      std::size_t pos = s.find(sep, start);
      parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return parts;
  };

  std::vector<std::vector<Integer>> vectors;
  for (auto part : split(trim(text), ';')) {
    std::vector<Integer> v;
    for (auto comp : split(part, ',')) {
      comp = trim(comp);
      std::string digits(comp);
      if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
      Integer value;
      if (digits.empty() || value.set_str(digits, 10) != 0) {
        throw ParseError("bad vector component '" + std::string(comp) + "'");
      }
      v.push_back(value);
    }
    vectors.push_back(std::move(v));
  }
  const std::size_t s = vectors.front().size();
  IntegerMatrix m(s, vectors.size());
  for (std::size_t c = 0; c < vectors.size(); ++c) {
    if (vectors[c].size() != s) throw ParseError("vectors of mixed dimension");
    for (std::size_t r = 0; r < s; ++r) m(r, c) = vectors[c][r];
  }
  return VectorConfig(std::move(m));
}

namespace detail {

inline geometry::Point to_point(const RationalVector& v) { return {v[0], v[1]}; }

inline RationalVector column_of(const IntegerMatrix& m, std::size_t c) {
  RationalVector out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.emplace_back(m(r, c));
  return out;
}

}  // namespace detail

/// Support of B_X: Minkowski sum of the segments [0, a_i].
struct Zonotope {
  std::size_t dimension = 0;
  /// s = 1: the two segment ends. s = 2: counterclockwise vertices.
  std::vector<RationalVector> vertices;

  bool strictly_contains(const RationalVector& x) const {
    if (dimension == 1) return vertices[0][0] < x[0] && x[0] < vertices[1][0];
    std::vector<geometry::Point> poly;
    for (const auto& v : vertices) poly.push_back(detail::to_point(v));
    return geometry::strictly_inside(poly, detail::to_point(x));
  }

  /// Lower and upper corners of the bounding box.
  std::pair<RationalVector, RationalVector> bounding_box() const {
    RationalVector lo = vertices.front(), hi = vertices.front();
    for (const auto& v : vertices) {
      for (std::size_t r = 0; r < dimension; ++r) {
        lo[r] = std::min(lo[r], v[r]);
        hi[r] = std::max(hi[r], v[r]);
      }
    }
    return {lo, hi};
  }
};

/// Iterated Minkowski sum of segments, each step followed by a convex hull.
inline Zonotope zonotope_support(const VectorConfig& x) {
  Zonotope z;
  z.dimension = x.dimension();
  const auto& m = x.matrix();
  if (z.dimension == 1) {
    Rational lo, hi;
    for (std::size_t c = 0; c < x.size(); ++c) {
      (m(0, c) < 0 ? lo : hi) += Rational(m(0, c));
    }
    z.vertices = {{lo}, {hi}};
    return z;
  }
  std::vector<geometry::Point> hull{{Rational(0), Rational(0)}};
  for (std::size_t c = 0; c < x.size(); ++c) {
    std::vector<geometry::Point> pts = hull;
    for (const auto& p : hull) pts.push_back({p.x + Rational(m(0, c)), p.y + Rational(m(1, c))});
    hull = geometry::convex_hull(std::move(pts));
  }
  for (const auto& p : hull) z.vertices.push_back({p.x, p.y});
  return z;
}

/// Points of (1/2) * (lattice generated by X) strictly inside the zonotope,
/// sorted lexicographically.
struct Omega {
  std::vector<RationalVector> points;
  /// X generates a proper sublattice of Z^s, so the half lattice is coarser
  /// than (1/2) Z^s.
  bool proper_sublattice = false;
};

inline Omega semi_integral_interior_points(const VectorConfig& x) {
  const Zonotope z = zonotope_support(x);
  const auto [lo, hi] = z.bounding_box();
  const std::size_t s = x.dimension();
  const IntegerMatrix& basis = x.lattice();

  RationalMatrix half(s, s);
  for (std::size_t r = 0; r < s; ++r) {
    for (std::size_t c = 0; c < s; ++c) half(r, c) = Rational(basis(r, c)) / Rational(2);
  }

  Omega omega;
  omega.proper_sublattice = determinant(half) * Rational(1 << s) != Rational(1) &&
                            determinant(half) * Rational(1 << s) != Rational(-1);

  // Coefficient ranges: image of the bounding box corners under half^{-1}.
  std::vector<Integer> kmin(s), kmax(s);
  std::vector<RationalVector> corners;
  if (s == 1) {
    corners = {lo, hi};
  } else {
    corners = {lo, hi, {lo[0], hi[1]}, {hi[0], lo[1]}};
  }
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const RationalVector k = solve(half, corners[i]);
    for (std::size_t r = 0; r < s; ++r) {
      if (i == 0 || k[r].floor() < kmin[r]) kmin[r] = k[r].floor();
      if (i == 0 || k[r].ceil() > kmax[r]) kmax[r] = k[r].ceil();
    }
  }

  std::vector<Integer> k = kmin;
  while (true) {
    RationalVector p(s);
    for (std::size_t r = 0; r < s; ++r) {
      for (std::size_t c = 0; c < s; ++c) p[r] += half(r, c) * Rational(k[c]);
    }
    if (z.strictly_contains(p)) omega.points.push_back(std::move(p));
    std::size_t r = 0;
    while (r < s && k[r] == kmax[r]) {
      k[r] = kmin[r];
      ++r;
    }
    if (r == s) break;
    ++k[r];
  }
  std::sort(omega.points.begin(), omega.points.end());
  return omega;
}

/// Parametrization t = W x + V u of the fiber {t : X t = x}: W is a right
/// inverse of X (m x s), V an integer kernel basis (m x (m - s)).
struct FiberParametrization {
  RationalMatrix right_inverse;
  RationalMatrix kernel;
  /// |det [W V]|, the Jacobian factor of t -> (x, u).
  Rational jacobian;
};

/// Builds W from the columns `basis_columns` of X (which must be linearly
/// independent), or from the first s independent columns when empty. V gets
/// one integer kernel vector per remaining column, scaled by
/// `kernel_scale`.
inline FiberParametrization fiber_parametrization(
    const VectorConfig& x, std::vector<std::size_t> basis_columns = {},
    const Rational& kernel_scale = Rational(1)) {
  const std::size_t s = x.dimension();
  const std::size_t m = x.size();
  const auto& mat = x.matrix();
  auto submatrix = [&](const std::vector<std::size_t>& cols) {
    RationalMatrix sub(s, cols.size());
    for (std::size_t r = 0; r < s; ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) sub(r, c) = Rational(mat(r, cols[c]));
    }
    return sub;
  };

  if (basis_columns.empty()) {
    for (std::size_t c = 0; c < m && basis_columns.size() < s; ++c) {
      basis_columns.push_back(c);
      const auto sub = submatrix(basis_columns);
      // Keep c only if it raises the rank.
      bool independent = true;
      if (basis_columns.size() == 2) independent = !determinant(sub).is_zero();
      if (!independent) basis_columns.pop_back();
    }
  }
  if (basis_columns.size() != s) throw RankError("no independent column choice");
  const RationalMatrix xj = submatrix(basis_columns);
  if (determinant(xj).is_zero()) throw RankError("chosen columns are dependent");

  // Inverse of X_J column by column.
  RationalMatrix xj_inv(s, s);
  for (std::size_t c = 0; c < s; ++c) {
    RationalVector e(s);
    e[c] = Rational(1);
    const auto col = solve(xj, e);
    for (std::size_t r = 0; r < s; ++r) xj_inv(r, c) = col[r];
  }

  FiberParametrization fp;
  fp.right_inverse = RationalMatrix(m, s);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t c = 0; c < s; ++c) fp.right_inverse(basis_columns[i], c) = xj_inv(i, c);
  }

  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m; ++c) {
    if (std::find(basis_columns.begin(), basis_columns.end(), c) == basis_columns.end()) {
      free_cols.push_back(c);
    }
  }
  fp.kernel = RationalMatrix(m, free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    const auto rhs = detail::column_of(mat, free_cols[f]);
    const auto coeff = solve(xj, rhs);
    RationalVector v(m);
    v[free_cols[f]] = Rational(1);
    for (std::size_t i = 0; i < s; ++i) v[basis_columns[i]] = -coeff[i];
    Integer den_lcm = 1;
    for (const auto& e : v) {
      Integer d = e.denominator();
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    }
    for (std::size_t r = 0; r < m; ++r) fp.kernel(r, f) = v[r] * Rational(den_lcm) * kernel_scale;
  }

  RationalMatrix full(m, m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < s; ++c) full(r, c) = fp.right_inverse(r, c);
    for (std::size_t c = 0; c < free_cols.size(); ++c) full(r, s + c) = fp.kernel(r, c);
  }
  fp.jacobian = determinant(full).abs();
  return fp;
}

namespace detail {

inline bool all_unit_univariate(const VectorConfig& x) {
  if (x.dimension() != 1) return false;
  for (std::size_t c = 0; c < x.size(); ++c) {
    if (x.matrix()(0, c) != 1 && x.matrix()(0, c) != -1) return false;
  }
  return true;
}

}  // namespace detail

/// Exact value of the box spline B_X at x, normalized so that
/// integral_{[0,1]^m} f(X t) dt = integral B_X(x) f(x) dx. Then
///   B_X(x) = |det [W V]| * vol_{m-s} {u : W x + V u in [0,1]^m},
/// and the fiber is a point (m = s), a segment (m - s = 1) or a polygon
/// (m - s = 2). For m = s the box is taken half-open, [0,1)^m, which fixes the
/// value on the boundary of the support.
inline Rational box_spline_eval(const VectorConfig& x, const RationalVector& point,
                                const FiberParametrization& fp) {
  const std::size_t s = x.dimension();
  const std::size_t m = x.size();
  if (point.size() != s) throw DimensionError("evaluation point has wrong dimension");
  const std::size_t d = m - s;

  RationalVector t0(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < s; ++c) t0[r] += fp.right_inverse(r, c) * point[c];
  }

  if (d == 0) {
    for (const auto& t : t0) {
      if (t.sign() < 0 || !(t < Rational(1))) return Rational(0);
    }
    return fp.jacobian;
  }

  if (d == 1) {
    std::optional<Rational> lo, hi;
    for (std::size_t r = 0; r < m; ++r) {
      const Rational& v = fp.kernel(r, 0);
      if (v.is_zero()) {
        if (t0[r].sign() < 0 || Rational(1) < t0[r]) return Rational(0);
        continue;
      }
      Rational a = -t0[r] / v;
      Rational b = (Rational(1) - t0[r]) / v;
      if (b < a) std::swap(a, b);
      if (!lo || *lo < a) lo = a;
      if (!hi || b < *hi) hi = b;
    }
    if (!(*lo < *hi)) return Rational(0);
    return fp.jacobian * (*hi - *lo);
  }

  if (d == 2) {
    auto row = [&](std::size_t r) { return std::pair{fp.kernel(r, 0), fp.kernel(r, 1)}; };
    // Start from the parallelogram cut out by two rows with independent
    // kernel components; every other row then clips it.
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    for (std::size_t i = 0; i < m && !pair; ++i) {
      for (std::size_t j = i + 1; j < m && !pair; ++j) {
        auto [a1, b1] = row(i);
        auto [a2, b2] = row(j);
        if (!(a1 * b2 - a2 * b1).is_zero()) pair = std::pair{i, j};
      }
    }
    const auto [i, j] = *pair;
    const auto [a1, b1] = row(i);
    const auto [a2, b2] = row(j);
    const Rational det = a1 * b2 - a2 * b1;
    auto corner = [&](const Rational& ci, const Rational& cj) {
      const Rational r1 = ci - t0[i];
      const Rational r2 = cj - t0[j];
      return geometry::Point{(r1 * b2 - r2 * b1) / det, (a1 * r2 - a2 * r1) / det};
    };
    const Rational zero(0), one(1);
    std::vector<geometry::Point> poly{corner(zero, zero), corner(one, zero),
                                      corner(one, one), corner(zero, one)};
    for (std::size_t r = 0; r < m && !poly.empty(); ++r) {
      if (r == i || r == j) continue;
      const auto [a, b] = row(r);
      if (a.is_zero() && b.is_zero()) {
        if (t0[r].sign() < 0 || Rational(1) < t0[r]) return Rational(0);
        continue;
      }
      poly = geometry::clip(poly, a, b, t0[r]);
      poly = geometry::clip(poly, -a, -b, Rational(1) - t0[r]);
    }
    return fp.jacobian * geometry::area(poly);
  }

  throw CapabilityError("box spline evaluation supports m - s <= 2 (got " +
                        std::to_string(d) + ")");
}

/// B_X(point). Univariate configurations of +-1 entries are the cardinal
/// B-spline B_{m-1} moved left by the number of -1 entries; those go through
/// cardinal_bspline so any m is accepted. Everything else needs m - s <= 2.
inline Rational box_spline_eval(const VectorConfig& x, const RationalVector& point) {
  if (point.size() != x.dimension()) {
    throw DimensionError("evaluation point has wrong dimension");
  }
  if (x.size() - x.dimension() > 2) {
    if (!detail::all_unit_univariate(x)) {
      throw CapabilityError("box spline evaluation supports m - s <= 2");
    }
    long negatives = 0;
    for (std::size_t c = 0; c < x.size(); ++c) negatives += x.matrix()(0, c) < 0;
    const Spline b = cardinal_bspline(static_cast<int>(x.size()) - 1);
    return b(point[0] + Rational(negatives));
  }
  return box_spline_eval(x, point, fiber_parametrization(x));
}

struct UnimodularityWitness {
  std::vector<std::size_t> columns;
  IntegerMatrix minor;
  Integer det;
};

struct UnimodularResult {
  bool unimodular = true;
  std::optional<UnimodularityWitness> witness;
};

/// Every s x s minor has determinant in {-1, 0, 1}; otherwise the first
/// offending minor (columns in lexicographic order) is returned.
inline UnimodularResult unimodular_check(const VectorConfig& x) {
  const auto& m = x.matrix();
  UnimodularResult result;
  auto fail = [&](std::vector<std::size_t> cols, Integer det) {
    IntegerMatrix minor(x.dimension(), cols.size());
    for (std::size_t r = 0; r < x.dimension(); ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) minor(r, c) = m(r, cols[c]);
    }
    result.unimodular = false;
    result.witness = UnimodularityWitness{std::move(cols), std::move(minor), std::move(det)};
  };
  if (x.dimension() == 1) {
    for (std::size_t c = 0; c < x.size(); ++c) {
      if (abs(m(0, c)) > 1) {
        fail({c}, m(0, c));
        break;
      }
    }
    return result;
  }
  for (std::size_t i = 0; i < x.size() && result.unimodular; ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      Integer det = m(0, i) * m(1, j) - m(0, j) * m(1, i);
      if (abs(det) > 1) {
        fail({i, j}, det);
        break;
      }
    }
  }
  return result;
}

/// (A_X)_{ij} = B_X(sum(X) + omega_i - 2 omega_j) over the sorted Omega.
inline RationalMatrix conjecture_matrix(const VectorConfig& x, const Omega& omega) {
  const std::size_t n = omega.points.size();
  const RationalVector centre = x.sum();
  const std::size_t s = x.dimension();
  const bool fiber_path = x.size() - s <= 2;
  const FiberParametrization fp =
      fiber_path ? fiber_parametrization(x) : FiberParametrization{};
  RationalMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      RationalVector p(s);
      for (std::size_t r = 0; r < s; ++r) {
        p[r] = centre[r] + omega.points[i][r] - Rational(2) * omega.points[j][r];
      }
      a(i, j) = fiber_path ? box_spline_eval(x, p, fp) : box_spline_eval(x, p);
    }
  }
  return a;
}

inline RationalMatrix conjecture_matrix(const VectorConfig& x) {
  return conjecture_matrix(x, semi_integral_interior_points(x));
}

struct ConjectureVerdict {
  VectorConfig config;
  UnimodularResult unimodular;
  Omega omega;
  RationalMatrix matrix;
  Rational determinant;
  bool invertible = false;
  /// Omega is empty: the 0 x 0 matrix with determinant 1.
  bool vacuous = false;
};

inline ConjectureVerdict conjecture_verdict(const VectorConfig& x) {
  ConjectureVerdict v{x, unimodular_check(x), semi_integral_interior_points(x), {}, {}, false, false};
  v.matrix = conjecture_matrix(x, v.omega);
  v.determinant = determinant(v.matrix);
  v.invertible = !v.determinant.is_zero();
  v.vacuous = v.omega.points.empty();
  return v;
}

}  // namespace splinezero
