#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "splinezero/errors.hpp"
#include "splinezero/rational.hpp"
#include "splinezero/spline.hpp"

namespace splinezero {

// Spline document:
//   { "degree": m, "knots": ["p/q", ...], "pieces": [["p/q", ...], ...] }
// pieces has one entry more than knots, coefficients ascending, every
// rational canonical.

inline nlohmann::json spline_to_json(const Spline& s) {
  nlohmann::json knots = nlohmann::json::array();
  for (const auto& k : s.knots()) knots.push_back(k.to_string());
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& p : s.pieces()) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : p.coefficients()) coeffs.push_back(c.to_string());
    pieces.push_back(std::move(coeffs));
  }
  return {{"degree", s.degree()}, {"knots", std::move(knots)}, {"pieces", std::move(pieces)}};
}

namespace detail {

inline Rational canonical_rational(const nlohmann::json& j) {
  if (!j.is_string()) throw ParseError("rationals must be strings \"p/q\"");
  const std::string text = j.get<std::string>();
  Rational r = Rational::parse(text);
  if (r.to_string() != text) {
    throw ParseError("rational '" + text + "' is not in canonical form");
  }
  return r;
}

}  // namespace detail

/// Rejects anything off-schema, non-canonical rationals, and splines that
/// fail the smoothness check.
inline Spline spline_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("degree") || !doc.contains("knots") ||
      !doc.contains("pieces")) {
    throw ParseError("spline document needs degree, knots and pieces");
  }
  if (!doc["degree"].is_number_integer()) throw ParseError("degree must be an integer");
  if (!doc["knots"].is_array() || !doc["pieces"].is_array()) {
    throw ParseError("knots and pieces must be arrays");
  }
  const int degree = doc["degree"].get<int>();
  std::vector<Rational> knots;
  for (const auto& k : doc["knots"]) knots.push_back(detail::canonical_rational(k));
  std::vector<Polynomial> pieces;
  for (const auto& p : doc["pieces"]) {
    if (!p.is_array()) throw ParseError("each piece must be an array of coefficients");
    std::vector<Rational> coeffs;
    for (const auto& c : p) coeffs.push_back(detail::canonical_rational(c));
    if (!coeffs.empty() && coeffs.back().is_zero()) {
      throw ParseError("piece has a trailing zero coefficient");
    }
    pieces.emplace_back(std::move(coeffs));
  }
  return Spline(degree, std::move(knots), std::move(pieces));
}

inline Spline spline_from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return spline_from_json(doc);
}

}  // namespace splinezero
