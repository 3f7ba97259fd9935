#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <concepts>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "splinezero/errors.hpp"

namespace splinezero {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Exact rational number, always held in canonical form: positive
/// denominator, coprime numerator and denominator, zero as 0/1. Because the
/// form is canonical, equality is plain structural comparison.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T value) : q_(Integer(static_cast<long>(value))) {}  // NOLINT

  Rational(Integer value) : q_(std::move(value)) {}  // NOLINT

  Rational(Integer numerator, Integer denominator) {
    if (denominator == 0) {
      throw std::domain_error("Rational with zero denominator");
    }
    q_ = mpq_class(std::move(numerator), std::move(denominator));
    q_.canonicalize();
  }

  /// Parses "p/q" or "p", optional surrounding whitespace, optional sign on p.
  static Rational parse(std::string_view text);

  Integer numerator() const { return q_.get_num(); }
  Integer denominator() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  /// "p/q", or "p" when q = 1.
  std::string to_string() const { return q_.get_str(); }

  double to_double() const { return q_.get_d(); }

  Rational abs() const { return from_mpq(::abs(q_)); }
  Integer floor() const {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }
  Integer ceil() const {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }

  Rational operator-() const { return from_mpq(-q_); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.q_ == b.q_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  static Rational from_mpq(mpq_class q) {
    Rational r;
    r.q_ = std::move(q);
    return r;
  }

  mpq_class q_{0};
};

inline Rational Rational::parse(std::string_view text) {
  auto skip_ws = [&](std::size_t& i) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
  };
  auto read_digits = [&](std::size_t& i) {
    std::size_t start = i;
    while (i < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i == start) {
      throw ParseError("expected digits in rational '" + std::string(text) +
                       "'");
    }
    return std::string(text.substr(start, i - start));
  };

  std::size_t i = 0;
  skip_ws(i);
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  Integer num(read_digits(i));
  if (negative) num = -num;
  skip_ws(i);
  Integer den(1);
  if (i < text.size() && text[i] == '/') {
    ++i;
    skip_ws(i);
    den = Integer(read_digits(i));
    skip_ws(i);
    if (den == 0) {
      throw ParseError("zero denominator in rational '" + std::string(text) +
                       "'");
    }
  }
  if (i != text.size()) {
    throw ParseError("trailing characters in rational '" + std::string(text) +
                     "'");
  }
  return Rational(std::move(num), std::move(den));
}

}  // namespace splinezero
