#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "splinezero/boxspline.hpp"
#include "splinezero/census.hpp"

using namespace splinezero;

namespace {

Rational q(long p, long d = 1) { return Rational(Integer(p), Integer(d)); }

VectorConfig cfg(const char* text) { return VectorConfig::parse(text); }

VectorConfig ones(int count) {
  IntegerMatrix m(1, static_cast<std::size_t>(count));
  for (std::size_t c = 0; c < m.cols(); ++c) m(0, c) = 1;
  return VectorConfig(m);
}

const char* kA2 = "1,0;1,1;0,1";
const char* kB2 = "1,0;1,1;0,1;-1,1";

Rational point_in(std::mt19937_64& g, long lo, long hi, long den) {
  return Rational(Integer(oracle::uniform(g, lo * den, hi * den)), Integer(den));
}

/// Hull of all 2^m subset sums.
std::vector<oracle::Point> subset_sum_hull(const VectorConfig& x) {
  std::vector<oracle::Point> pts;
  const std::size_t m = x.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    oracle::Point p{q(0), q(0)};
    for (std::size_t c = 0; c < m; ++c) {
      if (mask >> c & 1) {
        p.x += Rational(x.matrix()(0, c));
        p.y += Rational(x.matrix()(1, c));
      }
    }
    pts.push_back(p);
  }
  return oracle::gift_wrap(pts);
}

bool strictly_left_of_all(const std::vector<oracle::Point>& ccw, const oracle::Point& p) {
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const auto& a = ccw[i];
    const auto& b = ccw[(i + 1) % ccw.size()];
    if (((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)).sign() <= 0) return false;
  }
  return true;
}

/// Brute force over (1/2) Z^2 for configurations whose lattice is Z^2.
std::vector<RationalVector> brute_omega(const VectorConfig& x) {
  const auto hull = subset_sum_hull(x);
  std::vector<RationalVector> out;
  for (long i = -20; i <= 20; ++i) {
    for (long j = -20; j <= 20; ++j) {
      const oracle::Point p{q(i, 2), q(j, 2)};
      if (strictly_left_of_all(hull, p)) out.push_back({p.x, p.y});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational hat(const Rational& x) {
  const Rational d = (x - q(1)).abs();
  return d < q(1) ? q(1) - d : q(0);
}

/// s restricted to [a, b]: knots inside plus the ends, outer pieces continued.
Spline restrict_to(const Spline& s, const Rational& a, const Rational& b) {
  std::vector<Rational> knots{a};
  for (const auto& k : s.knots()) {
    if (a < k && k < b) knots.push_back(k);
  }
  knots.push_back(b);
  std::vector<Polynomial> pieces;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    pieces.push_back(s.pieces()[s.piece_index((knots[i] + knots[i + 1]) / q(2))]);
  }
  pieces.insert(pieces.begin(), pieces.front());
  pieces.push_back(pieces.back());
  return Spline(s.degree(), std::move(knots), std::move(pieces));
}

}  // namespace

TEST(VectorConfig, Parse) {
  const VectorConfig x = cfg(" 1,0 ; 1,1;0,+1 ");
  EXPECT_EQ(x.dimension(), 2u);
  EXPECT_EQ(x.size(), 3u);
  EXPECT_EQ(x.to_string(), "1,0;1,1;0,1");
  EXPECT_EQ(x.sum(), (RationalVector{q(2), q(2)}));
  EXPECT_EQ(cfg("1;1;1").dimension(), 1u);
}

TEST(VectorConfig, Errors) {
  EXPECT_THROW(cfg(""), ParseError);
  EXPECT_THROW(cfg("1,a"), ParseError);
  EXPECT_THROW(cfg("1,0;1"), ParseError);
  EXPECT_THROW(cfg("1,2,3"), DimensionError);
  EXPECT_THROW(cfg("0,0;1,0;0,1"), RankError);
  EXPECT_THROW(cfg("1,0;2,0"), RankError);
  EXPECT_THROW(cfg("1,1"), RankError);
}

TEST(Zonotope, Examples) {
  const Zonotope square = zonotope_support(cfg("1,0;0,1"));
  EXPECT_EQ(square.vertices, (std::vector<RationalVector>{{q(0), q(0)}, {q(1), q(0)},
                                                          {q(1), q(1)}, {q(0), q(1)}}));
  const Zonotope hex = zonotope_support(cfg(kA2));
  EXPECT_EQ(hex.vertices,
            (std::vector<RationalVector>{{q(0), q(0)}, {q(1), q(0)}, {q(2), q(1)},
                                         {q(2), q(2)}, {q(1), q(2)}, {q(0), q(1)}}));
  const Zonotope seg = zonotope_support(ones(4));
  EXPECT_EQ(seg.vertices, (std::vector<RationalVector>{{q(0)}, {q(4)}}));
  const Zonotope mixed = zonotope_support(cfg("2;-1;3"));
  EXPECT_EQ(mixed.vertices, (std::vector<RationalVector>{{q(-1)}, {q(5)}}));
}

TEST(Zonotope, MatchesSubsetSumHull) {
  auto g = oracle::rng(71);
  int checked = 0;
  while (checked < 60) {
    const long m = oracle::uniform(g, 2, 6);
    IntegerMatrix mat(2, static_cast<std::size_t>(m));
    for (std::size_t c = 0; c < mat.cols(); ++c) {
      mat(0, c) = oracle::uniform(g, -3, 3);
      mat(1, c) = oracle::uniform(g, -3, 3);
    }
    std::optional<VectorConfig> x;
    try {
      x.emplace(mat);
    } catch (const Error&) {
      continue;
    }
    ++checked;
    std::vector<RationalVector> expected;
    for (const auto& p : subset_sum_hull(*x)) expected.push_back({p.x, p.y});
    EXPECT_EQ(zonotope_support(*x).vertices, expected) << x->to_string();
  }
}

TEST(Omega, A2) {
  const Omega omega = semi_integral_interior_points(cfg(kA2));
  const std::vector<RationalVector> expected{
      {q(1, 2), q(1, 2)}, {q(1, 2), q(1)}, {q(1), q(1, 2)}, {q(1), q(1)},
      {q(1), q(3, 2)},    {q(3, 2), q(1)}, {q(3, 2), q(3, 2)}};
  EXPECT_EQ(omega.points, expected);
  EXPECT_EQ(brute_omega(cfg(kA2)), expected);
  EXPECT_FALSE(omega.proper_sublattice);
}

TEST(Omega, MatchesBruteForce) {
  for (const char* text : {kA2, kB2, "1,0;0,1", "1,0;0,1;1,1;1,-1", "1,0;1,2;0,1", "2,1;1,1;0,1"}) {
    const VectorConfig x = cfg(text);
    EXPECT_EQ(semi_integral_interior_points(x).points, brute_omega(x)) << text;
  }
}

TEST(Omega, Univariate) {
  EXPECT_EQ(semi_integral_interior_points(ones(2)).points,
            (std::vector<RationalVector>{{q(1, 2)}, {q(1)}, {q(3, 2)}}));
  for (int m = 1; m <= 8; ++m) {
    EXPECT_EQ(semi_integral_interior_points(ones(m + 1)).points.size(),
              static_cast<std::size_t>(2 * m + 1));
  }
}

TEST(Omega, ProperSublattice) {
  const Omega omega = semi_integral_interior_points(cfg("2,0;0,2"));
  EXPECT_TRUE(omega.proper_sublattice);
  EXPECT_EQ(omega.points, (std::vector<RationalVector>{{q(1), q(1)}}));
  EXPECT_TRUE(semi_integral_interior_points(cfg("2;2")).proper_sublattice);
}

TEST(Omega, StrictlyInteriorAndContainsCentre) {
  for (const char* text : {kA2, kB2, "1,0;0,1;1,1;1,-1", "2,1;1,3", "3;1;-2"}) {
    const VectorConfig x = cfg(text);
    const Zonotope z = zonotope_support(x);
    const Omega omega = semi_integral_interior_points(x);
    for (const auto& p : omega.points) EXPECT_TRUE(z.strictly_contains(p));
    for (const auto& v : z.vertices) EXPECT_FALSE(z.strictly_contains(v));
    RationalVector centre = x.sum();
    for (auto& c : centre) c /= q(2);
    EXPECT_TRUE(std::binary_search(omega.points.begin(), omega.points.end(), centre)) << text;
  }
}

TEST(BoxSplineEval, Examples) {
  EXPECT_EQ(box_spline_eval(cfg(kA2), {q(1), q(1)}), q(1));
  // Half-open box convention for m = s.
  const VectorConfig square = cfg("1,0;0,1");
  EXPECT_EQ(box_spline_eval(square, {q(0), q(0)}), q(1));
  EXPECT_EQ(box_spline_eval(square, {q(1), q(1, 2)}), q(0));
  EXPECT_EQ(box_spline_eval(cfg("2,1;1,3"), {q(3, 2), q(2)}), q(1, 5));
  EXPECT_EQ(box_spline_eval(cfg(kA2), {q(3), q(0)}), q(0));
  EXPECT_EQ(box_spline_eval(cfg(kA2), {q(-1, 3), q(1, 2)}), q(0));
}

TEST(BoxSplineEval, UnivariateMatchesCardinalBSpline) {
  auto g = oracle::rng(72);
  for (int m = 1; m <= 5; ++m) {
    const VectorConfig x = ones(m + 1);
    const Spline b = cardinal_bspline(m);
    for (int i = 0; i < 50; ++i) {
      const RationalVector p{point_in(g, 0, m + 1, oracle::uniform(g, 1, 9))};
      EXPECT_EQ(box_spline_eval(x, p), b(p[0])) << "m=" << m << " x=" << p[0];
      if (m <= 2) {
        EXPECT_EQ(box_spline_eval(x, p, fiber_parametrization(x)), b(p[0]));
      }
    }
  }
}

TEST(BoxSplineEval, NegativeUnitVectorsShift) {
  auto g = oracle::rng(73);
  const VectorConfig x = cfg("1;-1;1");
  const VectorConfig far = cfg("1;-1;1;-1;1");
  const Spline b2 = cardinal_bspline(2);
  const Spline b4 = cardinal_bspline(4);
  for (int i = 0; i < 30; ++i) {
    const Rational t = point_in(g, -3, 4, 7);
    EXPECT_EQ(box_spline_eval(x, {t}), b2(t + q(1)));
    EXPECT_EQ(box_spline_eval(far, {t}), b4(t + q(2)));
  }
}

TEST(BoxSplineEval, ZeroOutsideSupport) {
  auto g = oracle::rng(74);
  for (const char* text : {kA2, kB2, "1,0;0,1;1,1;1,-1"}) {
    const VectorConfig x = cfg(text);
    const auto [lo, hi] = zonotope_support(x).bounding_box();
    for (int i = 0; i < 20; ++i) {
      RationalVector p{lo[0] - point_in(g, 0, 3, 5) - q(1, 10), point_in(g, -4, 4, 3)};
      EXPECT_EQ(box_spline_eval(x, p), q(0));
      p = {point_in(g, -4, 4, 3), hi[1] + point_in(g, 0, 3, 5) + q(1, 10)};
      EXPECT_EQ(box_spline_eval(x, p), q(0));
    }
  }
}

TEST(BoxSplineEval, ChoiceIndependence) {
  auto g = oracle::rng(75);
  struct Case {
    const char* text;
    std::vector<std::vector<std::size_t>> bases;
  };
  const std::vector<Case> cases{
      {kA2, {{0, 1}, {1, 2}, {0, 2}}},
      {kB2, {{0, 1}, {2, 3}, {1, 3}}},
      {"1,0;0,1;1,1;1,-1", {{0, 1}, {2, 3}, {0, 3}}},
      {"1,0;1,2;0,1", {{0, 1}, {1, 2}}},
      {"1;2;1", {{0}, {1}}}};
  for (const auto& c : cases) {
    const VectorConfig x = cfg(c.text);
    const RationalVector lo = zonotope_support(x).bounding_box().first;
    const RationalVector hi = zonotope_support(x).bounding_box().second;
    for (int i = 0; i < 20; ++i) {
      RationalVector p;
      for (std::size_t r = 0; r < x.dimension(); ++r) {
        p.push_back(point_in(g, lo[r].floor().get_si(), hi[r].ceil().get_si(), 11));
      }
      const Rational reference = box_spline_eval(x, p);
      for (const auto& basis : c.bases) {
        for (const Rational& scale : {q(1), q(-1, 2), q(3)}) {
          EXPECT_EQ(box_spline_eval(x, p, fiber_parametrization(x, basis, scale)), reference)
              << c.text;
        }
      }
    }
  }
}

TEST(BoxSplineEval, CentralSymmetry) {
  auto g = oracle::rng(76);
  for (const char* text : {kA2, kB2, "1,0;0,1;1,1;1,-1", "1,0;1,2;0,1", "1;2;3"}) {
    const VectorConfig x = cfg(text);
    const RationalVector sum = x.sum();
    for (int i = 0; i < 20; ++i) {
      RationalVector p, mirrored;
      for (std::size_t r = 0; r < x.dimension(); ++r) {
        p.push_back(point_in(g, -1, 4, 13));
        mirrored.push_back(sum[r] - p.back());
      }
      EXPECT_EQ(box_spline_eval(x, p), box_spline_eval(x, mirrored)) << text;
    }
  }
}

TEST(BoxSplineEval, IntegerTranslatesSumToOne) {
  // Exact normalization check: for integer X the Z^s translates of B_X add
  // up to 1 at every point of continuity.
  auto g = oracle::rng(77);
  for (const char* text : {kA2, kB2, "1,0;0,1;1,1;1,-1", "1,0;1,2;0,1"}) {
    const VectorConfig x = cfg(text);
    for (int i = 0; i < 10; ++i) {
      const RationalVector p{point_in(g, 0, 1, 7), point_in(g, 0, 1, 11)};
      Rational total;
      for (long a = -6; a <= 6; ++a) {
        for (long b = -6; b <= 6; ++b) total += box_spline_eval(x, {p[0] - q(a), p[1] - q(b)});
      }
      EXPECT_EQ(total, q(1)) << text;
    }
  }
}

TEST(BoxSplineEval, CapabilityLimits) {
  EXPECT_THROW(box_spline_eval(cfg("1,0;0,1;1,1;1,-1;2,1"), {q(1), q(1)}), CapabilityError);
  EXPECT_THROW(box_spline_eval(cfg("1;2;1;1;1"), {q(1)}), CapabilityError);
  EXPECT_NO_THROW(box_spline_eval(cfg("1;1;1;1;1"), {q(1)}));
  EXPECT_THROW(box_spline_eval(cfg(kA2), {q(1)}), DimensionError);
}

TEST(Unimodular, Examples) {
  EXPECT_TRUE(unimodular_check(cfg(kA2)).unimodular);
  EXPECT_TRUE(unimodular_check(ones(7)).unimodular);
  const UnimodularResult b2 = unimodular_check(cfg(kB2));
  ASSERT_FALSE(b2.unimodular);
  ASSERT_TRUE(b2.witness.has_value());
  EXPECT_EQ(b2.witness->columns, (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(b2.witness->det, 2);
  const UnimodularResult uni = unimodular_check(cfg("1;2"));
  EXPECT_FALSE(uni.unimodular);
  EXPECT_EQ(uni.witness->det, 2);
}

TEST(ConjectureMatrix, XOneByHand) {
  const VectorConfig x = ones(2);
  const std::vector<Rational> omega{q(1, 2), q(1), q(3, 2)};
  RationalMatrix expected(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) expected(i, j) = hat(q(2) + omega[i] - q(2) * omega[j]);
  }
  EXPECT_EQ(expected, (RationalMatrix{{q(1, 2), q(1, 2), q(0)},
                                      {q(0), q(1), q(0)},
                                      {q(0), q(1, 2), q(1, 2)}}));
  EXPECT_EQ(conjecture_matrix(x), expected);
  EXPECT_EQ(oracle::cofactor_determinant(expected), q(1, 4));
  EXPECT_EQ(conjecture_verdict(x).determinant, q(1, 4));
}

TEST(ConjectureVerdict, A2) {
  const ConjectureVerdict v = conjecture_verdict(cfg(kA2));
  EXPECT_TRUE(v.unimodular.unimodular);
  EXPECT_EQ(v.omega.points.size(), 7u);
  EXPECT_EQ(v.determinant.abs(), q(1, 64));
  EXPECT_EQ(v.determinant, q(1, 64));  // sign under the lexicographic order
  EXPECT_EQ(oracle::cofactor_determinant(v.matrix), v.determinant);
  EXPECT_TRUE(v.invertible);
}

TEST(ConjectureVerdict, B2) {
  const ConjectureVerdict v = conjecture_verdict(cfg(kB2));
  EXPECT_FALSE(v.unimodular.unimodular);
  EXPECT_EQ(v.determinant, q(0));
  EXPECT_FALSE(v.invertible);
  EXPECT_EQ(v.matrix.rows(), v.omega.points.size());
}

TEST(ConjectureVerdict, UnitSquare) {
  const ConjectureVerdict v = conjecture_verdict(cfg("1,0;0,1"));
  EXPECT_EQ(v.omega.points.size(), 1u);
  EXPECT_EQ(v.determinant, q(1));
  EXPECT_FALSE(v.vacuous);
}

TEST(ConjectureVerdict, UnivariateFamily) {
  for (int m = 1; m <= 6; ++m) {
    const ConjectureVerdict v = conjecture_verdict(ones(m + 1));
    EXPECT_TRUE(v.unimodular.unimodular);
    EXPECT_EQ(v.omega.points.size(), static_cast<std::size_t>(2 * m + 1));
    EXPECT_TRUE(v.invertible) << "m=" << m;
  }
}

TEST(ConjectureMatrix, IsACollocationMatrixOfTranslatedBSplines) {
  for (int m = 1; m <= 5; ++m) {
    const VectorConfig x = ones(m + 1);
    const Omega omega = semi_integral_interior_points(x);
    const RationalMatrix a = conjecture_matrix(x, omega);
    const Spline b = cardinal_bspline(m);
    const Rational sum = q(m + 1);
    for (std::size_t i = 0; i < omega.points.size(); ++i) {
      for (std::size_t j = 0; j < omega.points.size(); ++j) {
        const Spline t = translate(b, q(2) * omega.points[j][0] - sum);
        EXPECT_EQ(a(i, j), t(omega.points[i][0]));
      }
    }
  }
}

TEST(ConjectureMatrix, CombinationsSeparateOmega) {
  // A combination sum_j d_j B_m(x - 2 w_j + sum) vanishing on all of Omega
  // would be a null vector. None exists: every non-zero coefficient choice
  // leaves a non-zero value somewhere on Omega, and the restriction to the
  // support interval stays consistent with the zero-forcing corollary.
  auto g = oracle::rng(78);
  for (int m = 1; m <= 4; ++m) {
    const VectorConfig x = ones(m + 1);
    const Omega omega = semi_integral_interior_points(x);
    const Rational sum = q(m + 1);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::pair<Rational, Rational>> terms;
      bool nonzero = false;
      for (const auto& w : omega.points) {
        const Rational d = oracle::small_rational(g, 3, 2);
        nonzero |= !d.is_zero();
        terms.emplace_back(q(2) * w[0] - sum, d);
      }
      if (!nonzero) continue;
      const Spline f = bspline_combination(m, terms);
      bool vanishes = true;
      for (const auto& w : omega.points) vanishes &= f(w[0]).is_zero();
      EXPECT_FALSE(vanishes);
      const Spline r = restrict_to(f, q(0), sum);
      EXPECT_TRUE(check_corollary10(r).consistent);
    }
  }
}
