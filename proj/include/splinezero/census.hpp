#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "splinezero/errors.hpp"
#include "splinezero/polynomial.hpp"
#include "splinezero/spline.hpp"

namespace splinezero {

// Separated zeros and connected components.
//
// Two zeros u < v of s are s-separated iff s is not constant on [u, v], and
// since s(u) = 0 that means s is not identically zero on [u, v]. So two zeros
// fail to be separated exactly when they lie in the same connected component
// of the zero set. A pairwise separated family therefore holds at most one
// zero per component, and one zero from each component is such a family:
// Z(s) is the number of connected components of {x : s(x) = 0}.
//
// The census below counts those components from per-domain facts only
// (identically zero or not, distinct open-interior roots, knot values), so no
// root is ever located.

struct DomainCensus {
  bool identically_zero = false;
  /// Distinct roots strictly inside the domain; empty when identically zero.
  std::optional<int> interior_roots;
};

struct ZeroReport {
  /// Knots b_0 < ... < b_k of the censused interval [b_0, b_k].
  std::vector<Rational> knots;
  std::vector<bool> knot_is_zero;
  /// domains[j] is [b_j, b_{j+1}].
  std::vector<DomainCensus> domains;
  /// Z on the closed interval.
  std::size_t component_count = 0;

  /// Components of the zero set inside [b_0, b_k], with either end excluded
  /// on request. Runs of consecutive zero items in the ordered sequence
  /// knot, domain, knot, ..., knot form one component each; isolated interior
  /// roots of a non-zero domain are components of their own.
  std::size_t components(bool include_left, bool include_right) const {
    std::size_t count = 0;
    bool in_run = false;
    auto visit = [&](bool zero) {
      if (zero && !in_run) ++count;
      in_run = zero;
    };
    for (std::size_t j = 0; j < domains.size(); ++j) {
      if (j > 0 || include_left) visit(knot_is_zero[j]);
      visit(domains[j].identically_zero);
      if (!domains[j].identically_zero) count += static_cast<std::size_t>(*domains[j].interior_roots);
    }
    if (include_right) visit(knot_is_zero.back());
    return count;
  }

  /// Z on the open interval (b_0, b_k).
  std::size_t open_component_count() const { return components(false, false); }

  bool any_zero_domain() const {
    return std::any_of(domains.begin(), domains.end(),
                       [](const DomainCensus& d) { return d.identically_zero; });
  }
  bool all_zero_domains() const {
    return std::all_of(domains.begin(), domains.end(),
                       [](const DomainCensus& d) { return d.identically_zero; });
  }

  /// Cardinality of the zero set in [b_0, b_k]; empty when infinite.
  std::optional<std::size_t> distinct_zero_count() const {
    if (any_zero_domain()) return std::nullopt;
    std::size_t n = static_cast<std::size_t>(
        std::count(knot_is_zero.begin(), knot_is_zero.end(), true));
    for (const auto& d : domains) n += static_cast<std::size_t>(*d.interior_roots);
    return n;
  }
};

/// Separated-zero census of s on [a, b], where a < b are knots of s.
/// Arbitrary sub-intervals are handled by inserting knots first, see
/// census_between.
inline ZeroReport separated_zero_count(const Spline& s, const Rational& a,
                                       const Rational& b) {
  if (!(a < b)) throw IntervalError("census interval needs a < b");
  if (s.degree() < 1 || !s.is_smooth()) {
    throw DegreeError("zero census needs a continuous spline");
  }
  const auto& knots = s.knots();
  auto first = std::lower_bound(knots.begin(), knots.end(), a);
  auto last = std::lower_bound(knots.begin(), knots.end(), b);
  if (first == knots.end() || *first != a || last == knots.end() || *last != b) {
    throw RangeError("census interval ends must be knots of the spline");
  }
  const auto i0 = static_cast<std::size_t>(first - knots.begin());
  const auto i1 = static_cast<std::size_t>(last - knots.begin());

  ZeroReport report;
  for (std::size_t i = i0; i <= i1; ++i) {
    report.knots.push_back(knots[i]);
    report.knot_is_zero.push_back(s(knots[i]).is_zero());
  }
  for (std::size_t i = i0 + 1; i <= i1; ++i) {
    const Polynomial& p = s.domain_piece(i);
    DomainCensus d;
    if (p.is_zero()) {
      d.identically_zero = true;
    } else {
      d.interior_roots = count_distinct_roots(p, knots[i - 1], knots[i], true, true);
    }
    report.domains.push_back(d);
  }
  report.component_count = report.components(true, true);
  return report;
}

/// Census over the spline's own outer knots [a_0, a_n].
inline ZeroReport separated_zero_count(const Spline& s) {
  return separated_zero_count(s, s.first_knot(), s.last_knot());
}

/// Census on an arbitrary [a, b] inside [a_0, a_n]; missing ends are
/// inserted as synthetic knots.
inline ZeroReport census_between(const Spline& s, const Rational& a,
                                 const Rational& b) {
  if (!(a < b)) throw IntervalError("census interval needs a < b");
  if (a < s.first_knot() || s.last_knot() < b) {
    throw RangeError("census interval must lie within the outer knots");
  }
  Spline t = s;
  for (const auto& x : {a, b}) {
    if (!std::binary_search(t.knots().begin(), t.knots().end(), x)) {
      t = insert_knot(t, x);
    }
  }
  return separated_zero_count(t, a, b);
}

struct TheoremVerdict {
  std::size_t z = 0;
  std::size_t n = 0;
  int m = 0;
  std::size_t bound = 0;        // n + m - 1
  std::size_t gross_bound = 0;  // m (n + 1), one polynomial count per domain
  bool pass = false;
};

/// Z <= n + m - 1 on [a_0, a_n], with n counted after normalization.
inline TheoremVerdict check_theorem_bound(const Spline& spline) {
  const Spline s = spline.normalized();
  TheoremVerdict v;
  v.n = s.span_count();
  v.m = s.degree();
  v.z = separated_zero_count(s).component_count;
  v.bound = v.n + static_cast<std::size_t>(v.m) - 1;
  v.gross_bound = static_cast<std::size_t>(v.m) * (v.n + 1);
  v.pass = v.z <= v.bound && v.z <= v.gross_bound;
  return v;
}

struct Prop5Verdict {
  bool is_applicable = false;
  bool n_ge_m_plus_1 = false;
  std::size_t n = 0;
  std::size_t interior_z = 0;
  long interior_bound = 0;  // n - m - 1
  std::size_t total_z = 0;
  long total_bound = 0;  // n - m + 1
  bool pass = false;
};

/// For splines whose outer knots are zeros of order >= m and are separated:
/// n >= m + 1, at most n - m - 1 separated zeros in the open interval, and
/// at most n - m + 1 on the closed one. Anything else is reported as not
/// applicable, never as a pass.
inline Prop5Verdict check_prop5(const Spline& spline) {
  const Spline s = spline.normalized();
  const int m = s.degree();
  Prop5Verdict v;
  v.n = s.span_count();
  const ZeroReport report = separated_zero_count(s);
  v.is_applicable = zero_order_at(s, s.first_knot()) >= m &&
                    zero_order_at(s, s.last_knot()) >= m &&
                    !report.all_zero_domains();
  if (!v.is_applicable) return v;
  const long n = static_cast<long>(v.n);
  v.n_ge_m_plus_1 = n >= m + 1;
  v.interior_z = report.open_component_count();
  v.interior_bound = n - m - 1;
  v.total_z = report.component_count;
  v.total_bound = n - m + 1;
  v.pass = v.n_ge_m_plus_1 &&
           static_cast<long>(v.interior_z) <= v.interior_bound &&
           static_cast<long>(v.total_z) <= v.total_bound;
  return v;
}

struct Corollary10Verdict {
  bool hyp1 = false;
  bool hyp2 = false;
  bool conclusion_holds = false;
  bool consistent = false;
};

/// hyp1: at least n + m zeros in [a_0, a_n] (an identically zero domain means
/// infinitely many). hyp2: every domain has an interior zero or zeros at both
/// ends. Together they force s to vanish on [a_0, a_n].
inline Corollary10Verdict check_corollary10(const Spline& spline) {
  const Spline s = spline.normalized();
  const ZeroReport report = separated_zero_count(s);
  const std::size_t threshold = s.span_count() + static_cast<std::size_t>(s.degree());
  Corollary10Verdict v;
  const auto zeros = report.distinct_zero_count();
  v.hyp1 = !zeros || *zeros >= threshold;
  v.hyp2 = true;
  for (std::size_t j = 0; j < report.domains.size(); ++j) {
    const auto& d = report.domains[j];
    const bool inside = d.identically_zero || *d.interior_roots > 0;
    const bool both_ends = report.knot_is_zero[j] && report.knot_is_zero[j + 1];
    if (!inside && !both_ends) {
      v.hyp2 = false;
      break;
    }
  }
  v.conclusion_holds = report.all_zero_domains();
  v.consistent = !(v.hyp1 && v.hyp2) || v.conclusion_holds;
  return v;
}

}  // namespace splinezero
