#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "splinezero/errors.hpp"
#include "splinezero/matrix.hpp"
#include "splinezero/polynomial.hpp"
#include "splinezero/spline.hpp"

namespace splinezero {

inline constexpr int kMaxCardinalDegree = 12;

namespace detail {

inline void check_cardinal_degree(int m) {
  if (m < 1 || m > kMaxCardinalDegree) {
    throw RangeError("cardinal B-spline degree must be in [1, 12]");
  }
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// Drops outer knots while the first (last) bounded domain carries the same
/// polynomial as the unbounded end piece. For a compactly supported spline
/// this trims the knot range to the support.
inline Spline trim_outer_knots(const Spline& s) {
  auto knots = s.knots();
  auto pieces = s.pieces();
  while (knots.size() > 2 && pieces[1] == pieces[0]) {
    knots.erase(knots.begin());
    pieces.erase(pieces.begin());
  }
  while (knots.size() > 2 && pieces[pieces.size() - 2] == pieces.back()) {
    knots.pop_back();
    pieces.pop_back();
  }
  return rebuild(s, std::move(knots), std::move(pieces));
}

}  // namespace detail

/// Cardinal B-spline B_m of degree m: knots 0, 1, ..., m+1, supported on
/// [0, m+1].
///
/// Built from the truncated power form
///   B_m(x) = (1/m!) sum_{k=0}^{m+1} (-1)^k C(m+1, k) (x - k)_+^m.
inline Spline cardinal_bspline(int m) {
  detail::check_cardinal_degree(m);
  const auto mu = static_cast<unsigned long>(m);
  const Integer fact = detail::factorial(mu);
  TruncatedPowerSpec spec;
  for (unsigned long k = 0; k <= mu + 1; ++k) {
    Integer c = detail::binomial(mu + 1, k);
    if (k % 2 == 1) c = -c;
    spec.jumps.push_back({Rational(static_cast<long>(k)), Rational(c, fact)});
  }
  return spline_from_truncated_powers(spec, m);
}

/// Pieces of B_m on [k, k+1], k = 0..m, by the convolution recurrence
///   B_m(x) = integral_{x-1}^{x} B_{m-1}(t) dt,   B_0 = indicator of [0, 1).
/// Independent of the truncated power route; used as its cross-check.
inline std::vector<Polynomial> cardinal_bspline_pieces_by_convolution(int m) {
  detail::check_cardinal_degree(m);
  std::vector<Polynomial> prev{Polynomial::constant(Rational(1))};
  for (int d = 1; d <= m; ++d) {
    // Antiderivatives of the degree d-1 pieces, prev[j] on [j, j+1].
    std::vector<Polynomial> anti;
    for (const auto& p : prev) anti.push_back(antiderivative(p, Rational(0)));
    std::vector<Polynomial> next;
    for (int k = 0; k <= d; ++k) {
      const Rational kk(k);
      Polynomial piece;
      // Part of [x-1, x] inside [k-1, k]: from x-1 up to k.
      if (k - 1 >= 0 && k - 1 < static_cast<int>(anti.size())) {
        const auto& a = anti[static_cast<std::size_t>(k - 1)];
        piece += Polynomial::constant(a(kk)) - translate(a, Rational(1));
      }
      // Part inside [k, k+1]: from k up to x.
      if (k < static_cast<int>(anti.size())) {
        const auto& a = anti[static_cast<std::size_t>(k)];
        piece += a - Polynomial::constant(a(kk));
      }
      next.push_back(std::move(piece));
    }
    prev = std::move(next);
  }
  return prev;
}

/// x -> sum_j d_j B_m(x - shift_j); shifts must be distinct.
inline Spline bspline_combination(
    int m, const std::vector<std::pair<Rational, Rational>>& terms) {
  detail::check_cardinal_degree(m);
  std::set<Rational> seen;
  for (const auto& [shift, coeff] : terms) {
    if (!seen.insert(shift).second) {
      throw DuplicateError("bspline_combination: duplicate shift " + shift.to_string());
    }
  }
  const Spline base = cardinal_bspline(m);
  std::optional<Spline> sum;
  for (const auto& [shift, coeff] : terms) {
    Spline term = scale(translate(base, shift), coeff);
    sum = sum ? add(*sum, term) : term;
  }
  if (!sum) throw DimensionError("bspline_combination: no terms");
  return *sum;
}

namespace detail {

/// Left half of the compact extension: returns the spline that equals s on
/// [a_0, +inf) and, left of a_0, equals sum_{j=-m}^{0} c_j B_m(x - a_0 - j)
/// with the c_j chosen so that this combination reproduces s's first piece.
inline Spline extend_left(const Spline& s) {
  const int m = s.degree();
  const auto mu = static_cast<std::size_t>(m);
  const Rational& a0 = s.first_knot();
  const Spline b = cardinal_bspline(m);

  // On [a_0, a_0 + 1], B_m(x - a_0 - j) is B_m's piece on [-j, -j+1], moved.
  std::vector<Polynomial> basis;
  for (int j = -m; j <= 0; ++j) {
    basis.push_back(translate(b.domain_piece(static_cast<std::size_t>(-j + 1)), a0 + Rational(j)));
  }
  RationalMatrix system(mu + 1, mu + 1);
  for (std::size_t row = 0; row <= mu; ++row) {
    for (std::size_t col = 0; col <= mu; ++col) system(row, col) = basis[col].coefficient(row);
  }
  const Polynomial& target = s.domain_piece(1);
  std::vector<Rational> rhs;
  for (std::size_t row = 0; row <= mu; ++row) rhs.push_back(target.coefficient(row));

  std::vector<Rational> coeffs;
  try {
    coeffs = solve(system, rhs);
  } catch (const SingularMatrixError&) {
    // Translates of B_m restricted to one unit interval are independent.
    throw ConsistencyError("extend_compact: B-spline matching system is singular");
  }

  std::vector<std::pair<Rational, Rational>> terms;
  for (int j = -m; j <= 0; ++j) {
    terms.emplace_back(a0 + Rational(j), coeffs[static_cast<std::size_t>(j + m)]);
  }
  const Spline left = bspline_combination(m, terms);

  // Glue: left of a_0 from the combination, a_0 onwards from s.
  std::vector<Rational> knots;
  std::vector<Polynomial> pieces;
  for (int j = -m; j <= 0; ++j) knots.push_back(a0 + Rational(j));
  pieces.push_back(Polynomial{});
  for (int j = -m + 1; j <= 0; ++j) {
    pieces.push_back(left.pieces()[left.piece_index(a0 + Rational(j))]);
  }
  for (std::size_t i = 1; i < s.knots().size(); ++i) knots.push_back(s.knots()[i]);
  for (std::size_t i = 1; i < s.pieces().size(); ++i) pieces.push_back(s.pieces()[i]);
  return Spline(m, std::move(knots), std::move(pieces));
}

}  // namespace detail

/// Compactly supported spline equal to s on [a_0, a_n], vanishing outside
/// [a_0 - m, a_n + m], with knots among a_0 - m, ..., a_0, the knots of s,
/// a_n, ..., a_n + m. The left side matches s's first piece by translated
/// B-splines; the right side is the same construction applied to the
/// reflected spline, which works because B_m is symmetric.
inline Spline extend_compact(const Spline& s) {
  if (s.degree() < 1 || !s.is_smooth()) {
    throw DegreeError("extend_compact needs degree >= 1");
  }
  const Spline left = detail::extend_left(s);
  const Spline both = reflect(detail::extend_left(reflect(left)));
  return detail::trim_outer_knots(both.normalized());
}

}  // namespace splinezero
