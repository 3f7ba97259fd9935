#pragma once

#include <algorithm>
#include <climits>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "splinezero/errors.hpp"
#include "splinezero/polynomial.hpp"
#include "splinezero/rational.hpp"

namespace splinezero {

/// Zero order reported when the spline vanishes on a whole neighborhood.
inline constexpr int kInfiniteOrder = INT_MAX;

/// A degree-m spline with finitely many knots a_0 < ... < a_n (n >= 1).
///
/// pieces()[0] lives on (-inf, a_0], pieces()[j] on [a_{j-1}, a_j] for
/// j = 1..n, and pieces()[n+1] on [a_n, +inf). Construction certifies C^{m-1}
/// smoothness at every knot exactly. The outermost knots a_0 and a_n delimit
/// the interval the zero-counting theorems talk about, so they are kept even
/// when the adjacent pieces coincide; interior knots whose neighbouring
/// pieces coincide are not genuine and are dropped by normalized().
class Spline {
 public:
  Spline(int degree, std::vector<Rational> knots, std::vector<Polynomial> pieces)
      : Spline(degree, std::move(knots), std::move(pieces), {}, true) {}

  int degree() const { return degree_; }
  /// n, the number of bounded polynomiality domains.
  std::size_t span_count() const { return knots_.size() - 1; }
  const std::vector<Rational>& knots() const { return knots_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }
  const Rational& first_knot() const { return knots_.front(); }
  const Rational& last_knot() const { return knots_.back(); }

  /// Piece on the bounded domain [a_{j-1}, a_j], j = 1..n.
  const Polynomial& domain_piece(std::size_t j) const { return pieces_.at(j); }

  /// False only for the piecewise-constant derivative of a degree-1 spline,
  /// which carries no smoothness and cannot be differentiated again.
  bool is_smooth() const { return smooth_; }

  /// True when the knot was added by insert_knot rather than supplied.
  bool is_synthetic(std::size_t knot) const { return synthetic_.at(knot); }

  /// A knot is genuine when the pieces on its two sides differ.
  bool is_genuine(std::size_t knot) const {
    return pieces_.at(knot) != pieces_.at(knot + 1);
  }

  /// Index into pieces() of the piece whose closed domain contains x. At a
  /// knot the left piece is returned; by continuity both agree there.
  std::size_t piece_index(const Rational& x) const {
    auto it = std::lower_bound(knots_.begin(), knots_.end(), x);
    return static_cast<std::size_t>(it - knots_.begin());
  }

  Rational operator()(const Rational& x) const { return pieces_[piece_index(x)](x); }

  /// Drops interior knots that are not genuine.
  Spline normalized() const {
    std::vector<Rational> knots{knots_.front()};
    std::vector<Polynomial> pieces{pieces_[0], pieces_[1]};
    std::vector<bool> synthetic{synthetic_.front()};
    for (std::size_t i = 1; i + 1 < knots_.size(); ++i) {
      if (!is_genuine(i)) continue;
      knots.push_back(knots_[i]);
      pieces.push_back(pieces_[i + 1]);
      synthetic.push_back(false);
    }
    knots.push_back(knots_.back());
    pieces.push_back(pieces_.back());
    synthetic.push_back(synthetic_.back());
    return Spline(degree_, std::move(knots), std::move(pieces),
                  std::move(synthetic), smooth_);
  }

  friend bool operator==(const Spline& a, const Spline& b) {
    return a.degree_ == b.degree_ && a.knots_ == b.knots_ &&
           a.pieces_ == b.pieces_;
  }

 private:
  friend Spline derivative(const Spline& s);
  friend Spline insert_knot(const Spline& s, const Rational& x);
  friend Spline rebuild(const Spline& like, std::vector<Rational> knots,
                        std::vector<Polynomial> pieces);

  Spline(int degree, std::vector<Rational> knots, std::vector<Polynomial> pieces,
         std::vector<bool> synthetic, bool smooth)
      : degree_(degree),
        knots_(std::move(knots)),
        pieces_(std::move(pieces)),
        synthetic_(std::move(synthetic)),
        smooth_(smooth) {
    if (synthetic_.empty()) synthetic_.assign(knots_.size(), false);
    validate();
  }

  void validate() const {
    if (smooth_ && degree_ < 1) {
      throw DegreeError("splines must have degree >= 1");
    }
    if (knots_.size() < 2) {
      throw OrderingError("a spline needs at least two knots");
    }
    for (std::size_t i = 1; i < knots_.size(); ++i) {
      if (!(knots_[i - 1] < knots_[i])) {
        throw OrderingError("knots must be strictly increasing");
      }
    }
    if (pieces_.size() != knots_.size() + 1) {
      throw DimensionError("a spline with k knots needs k + 1 pieces");
    }
    for (const auto& p : pieces_) {
      if (p.degree() > degree_) {
        throw DegreeError("piece degree " + std::to_string(p.degree()) +
                          " exceeds spline degree " + std::to_string(degree_));
      }
    }
    if (!smooth_) return;
    for (std::size_t i = 0; i < knots_.size(); ++i) {
      Polynomial jump = pieces_[i + 1] - pieces_[i];
      for (int j = 0; j < degree_; ++j) {
        if (!jump(knots_[i]).is_zero()) {
          throw SmoothnessError("derivative " + std::to_string(j) +
                                " jumps at knot " + knots_[i].to_string());
        }
        jump = splinezero::derivative(jump);
      }
    }
  }

  int degree_;
  std::vector<Rational> knots_;
  std::vector<Polynomial> pieces_;
  std::vector<bool> synthetic_;
  bool smooth_;
};

inline Rational evaluate(const Spline& s, const Rational& x) { return s(x); }

/// Same degree and smoothness status as `like`, new knots and pieces.
inline Spline rebuild(const Spline& like, std::vector<Rational> knots,
                      std::vector<Polynomial> pieces) {
  return Spline(like.degree_, std::move(knots), std::move(pieces), {}, like.smooth_);
}

/// Piecewise derivative. For degree 1 the result is piecewise constant and is
/// flagged non-smooth; it can be evaluated but not differentiated again.
inline Spline derivative(const Spline& s) {
  if (s.degree_ < 1 || !s.smooth_) {
    throw DegreeError("cannot differentiate a spline of degree 0");
  }
  std::vector<Polynomial> pieces;
  pieces.reserve(s.pieces_.size());
  for (const auto& p : s.pieces_) pieces.push_back(derivative(p));
  return Spline(s.degree_ - 1, s.knots_, std::move(pieces), {}, s.degree_ >= 2)
      .normalized();
}

/// Adds x as a non-genuine knot; the function is unchanged.
inline Spline insert_knot(const Spline& s, const Rational& x) {
  if (!(s.first_knot() < x && x < s.last_knot())) {
    throw RangeError("insert_knot: " + x.to_string() +
                     " is not strictly inside the outer knots");
  }
  auto it = std::lower_bound(s.knots_.begin(), s.knots_.end(), x);
  if (*it == x) throw DuplicateError("insert_knot: already a knot");
  const std::size_t at = static_cast<std::size_t>(it - s.knots_.begin());

  auto knots = s.knots_;
  auto pieces = s.pieces_;
  auto synthetic = s.synthetic_;
  knots.insert(knots.begin() + static_cast<std::ptrdiff_t>(at), x);
  pieces.insert(pieces.begin() + static_cast<std::ptrdiff_t>(at), pieces[at]);
  synthetic.insert(synthetic.begin() + static_cast<std::ptrdiff_t>(at), true);
  return Spline(s.degree_, std::move(knots), std::move(pieces),
                std::move(synthetic), s.smooth_);
}

/// x -> s(x - shift)
inline Spline translate(const Spline& s, const Rational& shift) {
  std::vector<Rational> knots;
  for (const auto& k : s.knots()) knots.push_back(k + shift);
  std::vector<Polynomial> pieces;
  for (const auto& p : s.pieces()) pieces.push_back(translate(p, shift));
  return rebuild(s, std::move(knots), std::move(pieces));
}

/// x -> s(-x)
inline Spline reflect(const Spline& s) {
  std::vector<Rational> knots;
  for (auto it = s.knots().rbegin(); it != s.knots().rend(); ++it) knots.push_back(-*it);
  std::vector<Polynomial> pieces;
  for (auto it = s.pieces().rbegin(); it != s.pieces().rend(); ++it) {
    pieces.push_back(reflect(*it));
  }
  return rebuild(s, std::move(knots), std::move(pieces));
}

/// c * s
inline Spline scale(const Spline& s, const Rational& c) {
  std::vector<Polynomial> pieces;
  for (const auto& p : s.pieces()) pieces.push_back(p * c);
  return rebuild(s, s.knots(), std::move(pieces)).normalized();
}

/// Sum of splines of a common degree over the union of their knot sets.
inline Spline add(const Spline& a, const Spline& b) {
  if (a.degree() != b.degree()) throw DegreeError("add: degree mismatch");
  std::set<Rational> all(a.knots().begin(), a.knots().end());
  all.insert(b.knots().begin(), b.knots().end());
  std::vector<Rational> knots(all.begin(), all.end());

  // The piece of a spline on the union domain whose right end is knots[i]
  // (i < size) or on the right unbounded domain (i == size).
  auto piece_on = [&](const Spline& s, std::size_t i) -> const Polynomial& {
    if (i == knots.size()) return s.pieces().back();
    return s.pieces()[s.piece_index(knots[i])];
  };
  std::vector<Polynomial> pieces;
  for (std::size_t i = 0; i <= knots.size(); ++i) {
    if (i > 0 && i < knots.size()) {
      // Pick by the domain midpoint so a knot of one summand never picks
      // the piece on the wrong side.
      const Rational mid = (knots[i - 1] + knots[i]) / Rational(2);
      pieces.push_back(a.pieces()[a.piece_index(mid)] + b.pieces()[b.piece_index(mid)]);
    } else {
      pieces.push_back(piece_on(a, i) + piece_on(b, i));
    }
  }
  return rebuild(a, std::move(knots), std::move(pieces)).normalized();
}

/// Polynomial base plus a sum of truncated powers c_i (x - t_i)_+^m.
struct TruncatedPowerSpec {
  struct Jump {
    Rational knot;
    Rational coefficient;
  };
  Polynomial base;
  std::vector<Jump> jumps;
  /// Outer knots; default to the first and last jump knot.
  std::optional<Rational> left;
  std::optional<Rational> right;
};

/// Builds s(x) = base(x) + sum_i c_i (x - t_i)_+^m. Smoothness holds by
/// construction and is re-verified by the Spline constructor; interior knots
/// with a zero jump are normalized away.
inline Spline spline_from_truncated_powers(const TruncatedPowerSpec& spec, int m) {
  if (m < 1) throw DegreeError("truncated power splines need m >= 1");
  if (spec.base.degree() > m) throw DegreeError("base polynomial degree exceeds m");
  for (std::size_t i = 1; i < spec.jumps.size(); ++i) {
    if (!(spec.jumps[i - 1].knot < spec.jumps[i].knot)) {
      throw OrderingError("truncated power knots must be strictly increasing");
    }
  }
  if (!spec.left && spec.jumps.empty()) {
    throw OrderingError("no knots: give jumps or outer knots");
  }
  const Rational left = spec.left ? *spec.left : spec.jumps.front().knot;
  const Rational right = spec.right ? *spec.right : spec.jumps.back().knot;
  if (!spec.jumps.empty() &&
      (spec.jumps.front().knot < left || right < spec.jumps.back().knot)) {
    throw OrderingError("jump knots must lie within the outer knots");
  }

  std::vector<Rational> knots{left};
  for (const auto& j : spec.jumps) {
    if (j.knot != knots.back()) knots.push_back(j.knot);
  }
  if (right != knots.back()) knots.push_back(right);

  // pieces[i] is the polynomial on the domain ending at knots[i].
  std::vector<Polynomial> pieces;
  Polynomial current = spec.base;
  std::size_t next_jump = 0;
  pieces.push_back(current);
  for (const auto& k : knots) {
    while (next_jump < spec.jumps.size() && spec.jumps[next_jump].knot == k) {
      const auto& j = spec.jumps[next_jump];
      current += translate(Polynomial::monomial(j.coefficient, static_cast<std::size_t>(m)),
                           j.knot);
      ++next_jump;
    }
    pieces.push_back(current);
  }
  return Spline(m, std::move(knots), std::move(pieces)).normalized();
}

/// Re-checks C^{m-1} matching of every knot, independently of construction.
inline bool has_matching_derivatives(const Spline& s, int order) {
  for (std::size_t i = 0; i < s.knots().size(); ++i) {
    Polynomial left = s.pieces()[i];
    Polynomial right = s.pieces()[i + 1];
    for (int j = 0; j <= order; ++j) {
      if (left(s.knots()[i]) != right(s.knots()[i])) return false;
      left = derivative(left);
      right = derivative(right);
    }
  }
  return true;
}

/// Order of z as a zero of s: the smallest j <= m-1 with s^(j)(z) != 0,
/// otherwise m; kInfiniteOrder when s vanishes on a neighborhood of z.
inline int zero_order_at(const Spline& s, const Rational& z) {
  const std::size_t idx = s.piece_index(z);
  const bool at_knot = idx < s.knots().size() && s.knots()[idx] == z;
  const bool flat = s.pieces()[idx].is_zero() &&
                    (!at_knot || s.pieces()[idx + 1].is_zero());
  if (flat) return kInfiniteOrder;
  Polynomial p = s.pieces()[idx];
  for (int j = 0; j < s.degree(); ++j) {
    if (!p(z).is_zero()) return j;
    p = derivative(p);
  }
  return s.degree();
}

}  // namespace splinezero
