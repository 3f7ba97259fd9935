#pragma once

#include <climits>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "splinezero/errors.hpp"
#include "splinezero/rational.hpp"

namespace splinezero {

/// Dense univariate polynomial over the rationals, ascending coefficients.
/// The coefficient vector is always trimmed: it is either empty (the zero
/// polynomial) or ends with a non-zero coefficient.
class Polynomial {
 public:
  /// Degree reported for the zero polynomial.
  static constexpr int kZeroDegree = INT_MIN;

  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients)
      : c_(std::move(coefficients)) {
    trim();
  }
  Polynomial(std::initializer_list<Rational> coefficients)
      : c_(coefficients) {
    trim();
  }

  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  static Polynomial monomial(const Rational& c, std::size_t k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return Polynomial(std::move(v));
  }
  /// x - root
  static Polynomial linear_factor(const Rational& root) {
    return Polynomial({-root, Rational(1)});
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const {
    return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1;
  }
  std::span<const Rational> coefficients() const { return c_; }
  /// Coefficient of x^k (zero beyond the degree).
  Rational coefficient(std::size_t k) const {
    return k < c_.size() ? c_[k] : Rational(0);
  }
  const Rational& leading() const { return c_.back(); }

  /// Horner evaluation.
  Rational operator()(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= x;
      acc += *it;
    }
    return acc;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) { return *this += -o; }
  Polynomial& operator*=(const Rational& k) {
    if (k.is_zero()) {
      c_.clear();
    } else {
      for (auto& c : c_) c *= k;
    }
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& k) { return a *= k; }
  friend Polynomial operator*(const Rational& k, Polynomial a) { return a *= k; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + c_[k].to_string() + ")";
      if (k >= 1) out += "x";
      if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
  }
  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    return os << p.to_string();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<Rational> c_;
};

inline Rational evaluate(const Polynomial& p, const Rational& x) { return p(x); }

/// Formal derivative.
inline Polynomial derivative(const Polynomial& p) {
  if (p.degree() < 1) return {};
  std::vector<Rational> out(static_cast<std::size_t>(p.degree()));
  for (std::size_t k = 1; k < p.coefficients().size(); ++k) {
    out[k - 1] = p.coefficients()[k] * Rational(static_cast<long>(k));
  }
  return Polynomial(std::move(out));
}

/// q with q' = p and q(0) = constant.
inline Polynomial antiderivative(const Polynomial& p, const Rational& constant) {
  std::vector<Rational> out(p.coefficients().size() + 1);
  out[0] = constant;
  for (std::size_t k = 0; k < p.coefficients().size(); ++k) {
    out[k + 1] = p.coefficients()[k] / Rational(static_cast<long>(k + 1));
  }
  return Polynomial(std::move(out));
}

/// p(x - shift), i.e. the graph of p moved right by `shift`.
inline Polynomial translate(const Polynomial& p, const Rational& shift) {
  const Polynomial step = Polynomial::linear_factor(shift);
  Polynomial acc;
  const auto c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * step + Polynomial::constant(*it);
  }
  return acc;
}

/// p(-x)
inline Polynomial reflect(const Polynomial& p) {
  std::vector<Rational> out(p.coefficients().begin(), p.coefficients().end());
  for (std::size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
  return Polynomial(std::move(out));
}

/// Euclidean division a = q*b + r with deg r < deg b.
inline std::pair<Polynomial, Polynomial> divide(const Polynomial& a,
                                                const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial{}, a};
  std::vector<Rational> rem(a.coefficients().begin(), a.coefficients().end());
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<Rational> quot(rem.size() - db);
  const Rational inv_lead = Rational(1) / b.leading();
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k].is_zero()) continue;
    const Rational f = rem[k] * inv_lead;
    quot[k - db] = f;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= f * b.coefficients()[j];
  }
  rem.resize(db);
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

/// Scales p by a positive constant so that its leading coefficient is +-1.
/// Signs at every point are preserved.
inline Polynomial normalize_positive(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p * (Rational(1) / p.leading().abs());
}

/// Monic greatest common divisor (zero when both inputs are zero).
inline Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divide(a, b).second;
    a = std::move(b);
    // Monic remainders keep the coefficient sizes in check.
    b = r.is_zero() ? r : r * (Rational(1) / r.leading());
  }
  if (a.is_zero()) return a;
  return a * (Rational(1) / a.leading());
}

/// p / gcd(p, p'): same distinct roots as p, each simple.
inline Polynomial square_free_part(const Polynomial& p) {
  if (p.degree() < 1) return p;
  return divide(p, gcd(p, derivative(p))).first;
}

/// Sturm sequence q, q', -rem(q, q'), ... with every member scaled by a
/// positive constant (sign pattern unchanged).
inline std::vector<Polynomial> sturm_sequence(const Polynomial& q) {
  std::vector<Polynomial> seq;
  if (q.is_zero()) return seq;
  seq.push_back(normalize_positive(q));
  Polynomial d = derivative(q);
  if (d.is_zero()) return seq;
  seq.push_back(normalize_positive(d));
  while (true) {
    Polynomial r = divide(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(normalize_positive(-r));
  }
  return seq;
}

/// Sign changes of the sequence at x, zeros skipped.
inline int sign_variations(std::span<const Polynomial> seq, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    const int s = p(x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Number of distinct real roots of p in the interval between a and b, each
/// end included or excluded per the flags. Roots are never located; the count
/// comes from the Sturm sequence of the square-free part of p, which counts
/// roots in (a, b], plus explicit endpoint evaluation.
inline int count_distinct_roots(const Polynomial& p, const Rational& a,
                                const Rational& b, bool open_left,
                                bool open_right) {
  if (p.is_zero()) {
    throw InfiniteRootsError("zero polynomial has infinitely many roots");
  }
  if (!(a < b)) throw IntervalError("count_distinct_roots needs a < b");
  if (p.degree() == 0) return 0;

  const bool root_at_a = p(a).is_zero();
  const bool root_at_b = p(b).is_zero();
  int count;
  if (p.degree() == 1) {
    const Rational root = -p.coefficient(0) / p.coefficient(1);
    count = (a < root && root < b) ? 1 : 0;
  } else {
    const auto seq = sturm_sequence(square_free_part(p));
    count = sign_variations(seq, a) - sign_variations(seq, b);
    if (root_at_b) --count;
  }
  if (root_at_a && !open_left) ++count;
  if (root_at_b && !open_right) ++count;
  return count;
}

}  // namespace splinezero
