#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "splinezero/bspline.hpp"
#include "splinezero/census.hpp"
#include "splinezero/errors.hpp"
#include "splinezero/spline.hpp"

namespace splinezero {

struct GeneratorConfig {
  std::uint64_t seed = 0;
  int degree = 3;
  /// Knots strictly between the two range endpoints.
  int interior_knots = 5;
  /// Rationals are drawn as p/q with |p| <= numerator_bound, 1 <= q <= denominator_bound.
  long numerator_bound = 8;
  long denominator_bound = 4;
  Rational range_lo = Rational(-4);
  Rational range_hi = Rational(4);

  void validate() const {
    if (degree < 1) throw RangeError("generator degree must be >= 1");
    if (interior_knots < 0) throw RangeError("interior knot count must be >= 0");
    if (numerator_bound < 1 || denominator_bound < 1) {
      throw RangeError("generator bounds must be positive");
    }
    if (!(range_lo < range_hi)) throw RangeError("knot range must be non-empty");
  }
};

/// splitmix64 finalizer; derives independent per-trial seeds from the master
/// seed so trial t is reproducible on its own.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace detail {

/// Uniform integer in [lo, hi] by rejection; unlike
/// std::uniform_int_distribution the mapping is the same on every standard
/// library.
inline long draw(std::mt19937_64& rng, long lo, long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return lo + static_cast<long>(v % span);
}

inline Rational draw_rational(std::mt19937_64& rng, const GeneratorConfig& cfg) {
  const long den = draw(rng, 1, cfg.denominator_bound);
  const long num = draw(rng, -cfg.numerator_bound, cfg.numerator_bound);
  return Rational(Integer(num), Integer(den));
}

inline Rational draw_nonzero_rational(std::mt19937_64& rng, const GeneratorConfig& cfg) {
  while (true) {
    Rational r = draw_rational(rng, cfg);
    if (!r.is_zero()) return r;
  }
}

}  // namespace detail

/// Random spline from a polynomial base plus one non-zero truncated power
/// per interior knot. Knots are distinct rationals p/q inside the range with
/// q <= denominator_bound; the range endpoints are the outer knots.
/// Deterministic in the seed.
inline Spline random_spline(const GeneratorConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  TruncatedPowerSpec spec;
  std::vector<Rational> coeffs;
  for (int k = 0; k <= cfg.degree; ++k) coeffs.push_back(detail::draw_rational(rng, cfg));
  spec.base = Polynomial(std::move(coeffs));

  std::set<Rational> knots;
  while (knots.size() < static_cast<std::size_t>(cfg.interior_knots)) {
    const long den = detail::draw(rng, 1, cfg.denominator_bound);
    const Integer lo_num = (cfg.range_lo * Rational(den)).floor() + 1;
    const Integer hi_num = (cfg.range_hi * Rational(den)).ceil() - 1;
    if (lo_num > hi_num) continue;
    const long num = detail::draw(rng, lo_num.get_si(), hi_num.get_si());
    knots.insert(Rational(Integer(num), Integer(den)));
  }
  for (const auto& k : knots) {
    spec.jumps.push_back({k, detail::draw_nonzero_rational(rng, cfg)});
  }
  spec.left = cfg.range_lo;
  spec.right = cfg.range_hi;
  return spline_from_truncated_powers(spec, cfg.degree);
}

/// Degree-1 spline through the alternating values 1, -1, 1, ... at the knots
/// 0, 1, ..., n. It has n separated zeros, the largest count allowed.
inline Spline zigzag_spline(std::size_t n) {
  std::vector<Rational> knots;
  for (std::size_t i = 0; i <= n; ++i) knots.emplace_back(static_cast<long>(i));
  auto value = [](std::size_t i) { return Rational(i % 2 == 0 ? 1 : -1); };
  std::vector<Polynomial> pieces;
  // Linear pieces; the unbounded ends continue the outer segments.
  auto segment = [&](std::size_t i) {
    const Rational slope = value(i + 1) - value(i);
    return Polynomial({value(i) - slope * Rational(static_cast<long>(i)), slope});
  };
  pieces.push_back(segment(0));
  for (std::size_t i = 0; i < n; ++i) pieces.push_back(segment(i));
  pieces.push_back(segment(n - 1));
  return Spline(1, std::move(knots), std::move(pieces));
}

enum class SuiteKind { theorem9, prop5, corollary10, extension, rolle };

inline SuiteKind parse_suite_kind(const std::string& name) {
  if (name == "theorem9") return SuiteKind::theorem9;
  if (name == "prop5") return SuiteKind::prop5;
  if (name == "corollary10") return SuiteKind::corollary10;
  if (name == "extension") return SuiteKind::extension;
  if (name == "rolle") return SuiteKind::rolle;
  throw ParseError("unknown verification kind '" + name + "'");
}

inline std::string to_string(SuiteKind kind) {
  switch (kind) {
    case SuiteKind::theorem9: return "theorem9";
    case SuiteKind::prop5: return "prop5";
    case SuiteKind::corollary10: return "corollary10";
    case SuiteKind::extension: return "extension";
    case SuiteKind::rolle: return "rolle";
  }
  return "";
}

/// Result of checking one spline.
struct TrialOutcome {
  bool violation = false;
  std::size_t z = 0;
  long bound = 0;
  /// The checked spline reaches its bound.
  bool tight = false;
  /// The spline the bound refers to (the extension for extension-based kinds).
  std::optional<Spline> checked;
  std::string failure;
};

using TrialChecker = std::function<TrialOutcome(const Spline&)>;

/// Extension checks: coincidence on [a_0, a_n], C^{m-1} everywhere, zero
/// outside [a_0 - m, a_n + m], knots in the allowed set. Returns the first
/// failed property, empty when all hold.
inline std::string extension_defect(const Spline& s, const Spline& ext) {
  const int m = s.degree();
  const Rational lo = s.first_knot() - Rational(m);
  const Rational hi = s.last_knot() + Rational(m);
  for (std::size_t j = 1; j <= s.span_count(); ++j) {
    const Rational mid = (s.knots()[j - 1] + s.knots()[j]) / Rational(2);
    if (ext.pieces()[ext.piece_index(mid)] != s.domain_piece(j)) {
      return "extension differs from the spline on [a_0, a_n]";
    }
  }
  if (!has_matching_derivatives(ext, m - 1)) return "extension is not C^{m-1}";
  if (!ext.pieces().front().is_zero() || !ext.pieces().back().is_zero() ||
      ext.first_knot() < lo || hi < ext.last_knot()) {
    return "extension does not vanish outside [a_0 - m, a_n + m]";
  }
  for (const auto& k : ext.knots()) {
    const bool own = std::binary_search(s.knots().begin(), s.knots().end(), k);
    const bool left = lo <= k && k <= s.first_knot() && (k - lo).is_integer();
    const bool right = s.last_knot() <= k && k <= hi && (k - s.last_knot()).is_integer();
    if (!own && !left && !right) return "extension knot " + k.to_string() + " outside the allowed set";
  }
  return {};
}

inline TrialOutcome check_theorem9_trial(const Spline& s) {
  TrialOutcome out;
  const auto v = check_theorem_bound(s);
  const auto c = check_corollary10(s);
  out.z = v.z;
  out.bound = static_cast<long>(v.bound);
  out.tight = v.z == v.bound;
  out.checked = s;
  if (!v.pass) out.failure = "separated zeros exceed n + m - 1";
  if (!c.consistent) out.failure = "zero-forcing implication fails";
  out.violation = !out.failure.empty();
  return out;
}

inline TrialOutcome check_corollary10_trial(const Spline& s) {
  TrialOutcome out;
  const auto c = check_corollary10(s);
  const auto v = check_theorem_bound(s);
  out.z = v.z;
  out.bound = static_cast<long>(v.bound);
  out.tight = v.z == v.bound;
  out.checked = s;
  if (!c.consistent) out.failure = "zero-forcing implication fails";
  out.violation = !out.failure.empty();
  return out;
}

namespace detail {

/// The compact-support statements say nothing about the zero spline; the
/// generator can still produce it (m = 1, no interior knots).
inline bool vanishes_on_domain(const Spline& s) {
  return separated_zero_count(s).all_zero_domains();
}

}  // namespace detail

inline TrialOutcome check_prop5_trial(const Spline& s) {
  TrialOutcome out;
  if (detail::vanishes_on_domain(s)) return out;
  const Spline ext = extend_compact(s);
  const auto p = check_prop5(ext);
  out.z = p.interior_z;
  out.bound = p.interior_bound;
  out.tight = p.is_applicable && static_cast<long>(p.interior_z) == p.interior_bound;
  out.checked = ext;
  if (!p.is_applicable) {
    out.failure = "extension does not satisfy the proposition's hypotheses";
  } else if (!p.pass) {
    out.failure = "extension exceeds n - m - 1 interior separated zeros";
  } else if (!check_corollary10(ext).consistent) {
    out.failure = "zero-forcing implication fails on the extension";
  }
  out.violation = !out.failure.empty();
  return out;
}

inline TrialOutcome check_extension_trial(const Spline& spline) {
  TrialOutcome out;
  const Spline s = spline.normalized();
  if (detail::vanishes_on_domain(s)) return out;
  const Spline ext = extend_compact(s);
  out.checked = ext;
  // Zeros of the extension on the open support bound those of s.
  const std::size_t chain_z = separated_zero_count(ext).open_component_count();
  out.z = chain_z;
  out.bound = static_cast<long>(s.span_count()) + s.degree() - 1;
  out.tight = static_cast<long>(chain_z) == out.bound;
  out.failure = extension_defect(s, ext);
  if (out.failure.empty() && static_cast<long>(chain_z) > out.bound) {
    out.failure = "extension has more than n + m - 1 separated zeros";
  }
  if (out.failure.empty() && !check_prop5(ext).pass) {
    out.failure = "extension fails the compact-support bound";
  }
  if (out.failure.empty() && !check_corollary10(ext).consistent) {
    out.failure = "zero-forcing implication fails on the extension";
  }
  out.violation = !out.failure.empty();
  return out;
}

/// Derivative of a compactly supported spline gains a separated zero between
/// every pair of consecutive zeros, so Z_open(s') >= Z_open(s) + 1.
inline TrialOutcome check_rolle_trial(const Spline& s) {
  TrialOutcome out;
  if (s.degree() < 2) throw DegreeError("rolle suite needs m >= 2");
  if (detail::vanishes_on_domain(s)) return out;
  const Spline ext = extend_compact(s);
  const Spline d = derivative(ext);
  const std::size_t z = separated_zero_count(ext).open_component_count();
  const std::size_t dz =
      separated_zero_count(d, ext.first_knot(), ext.last_knot()).open_component_count();
  out.z = z;
  out.bound = static_cast<long>(z) + 1;
  out.checked = ext;
  if (static_cast<long>(dz) < out.bound) out.failure = "derivative lost a separated zero";
  if (out.failure.empty() && !check_corollary10(ext).consistent) {
    out.failure = "zero-forcing implication fails on the extension";
  }
  out.violation = !out.failure.empty();
  return out;
}

inline TrialChecker default_checker(SuiteKind kind) {
  switch (kind) {
    case SuiteKind::theorem9: return check_theorem9_trial;
    case SuiteKind::prop5: return check_prop5_trial;
    case SuiteKind::corollary10: return check_corollary10_trial;
    case SuiteKind::extension: return check_extension_trial;
    case SuiteKind::rolle: return check_rolle_trial;
  }
  return check_theorem9_trial;
}

/// Fixed splines checked in addition to the random trials.
inline std::vector<Spline> corner_cases(SuiteKind kind, const GeneratorConfig& cfg) {
  std::vector<Spline> cases;
  const auto n = static_cast<std::size_t>(cfg.interior_knots + 1);
  if (cfg.degree == 1 && (kind == SuiteKind::theorem9 || kind == SuiteKind::corollary10)) {
    cases.push_back(zigzag_spline(n));
  }
  if (kind == SuiteKind::corollary10 || kind == SuiteKind::theorem9) {
    // Identically zero: both hypotheses hold and so does the conclusion.
    std::vector<Rational> knots;
    for (std::size_t i = 0; i <= n; ++i) knots.emplace_back(static_cast<long>(i));
    cases.emplace_back(cfg.degree, std::move(knots), std::vector<Polynomial>(n + 2));
  }
  return cases;
}

inline constexpr std::size_t kMaxWitnesses = 8;

struct TrialReport {
  std::string command;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t violations = 0;
  /// Largest separated-zero count seen (of the extension, for the kinds
  /// that extend first).
  std::size_t max_z = 0;
  /// n + m - 1 for the generated family, n = interior_knots + 1.
  long bound = 0;
  /// Splines reaching their bound, in trial order, at most kMaxWitnesses.
  std::vector<Spline> witnesses;
  /// Splines that broke a check, in trial order, at most kMaxWitnesses.
  std::vector<Spline> counterexamples;
  std::vector<std::string> failures;
  std::int64_t elapsed_ms = 0;
};

struct SuiteOptions {
  unsigned threads = 1;
  /// Replaces the kind's checker; used by self-tests of the exit contract.
  TrialChecker checker;
  bool corner_cases = true;
};

/// Runs `trials` seeded random trials (trial t uses seed mix_seed(cfg.seed, t))
/// plus the kind's corner cases. Trials are split over threads; results are
/// reduced in trial order so the report does not depend on the thread count.
inline TrialReport run_verification_suite(SuiteKind kind, const GeneratorConfig& cfg,
                                          std::size_t trials,
                                          const SuiteOptions& options = {}) {
  if (trials < 1) throw RangeError("need at least one trial");
  cfg.validate();
  if (kind == SuiteKind::rolle && cfg.degree < 2) {
    throw DegreeError("rolle suite needs m >= 2");
  }
  const auto start = std::chrono::steady_clock::now();
  const TrialChecker checker = options.checker ? options.checker : default_checker(kind);

  std::vector<Spline> extra;
  if (options.corner_cases) extra = corner_cases(kind, cfg);
  if (kind == SuiteKind::prop5 || kind == SuiteKind::extension || kind == SuiteKind::rolle) {
    extra.clear();
    if (options.corner_cases) extra.push_back(cardinal_bspline(cfg.degree));
  }
  const std::size_t total = trials + extra.size();

  std::vector<std::optional<TrialOutcome>> outcomes(total);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      if (t < trials) {
        GeneratorConfig c = cfg;
        c.seed = mix_seed(cfg.seed, t);
        outcomes[t] = checker(random_spline(c));
      } else {
        outcomes[t] = checker(extra[t - trials]);
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(total)));
  if (threads == 1) {
    run_range(0, total);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (total + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          run_range(std::min(total, w * chunk), std::min(total, (w + 1) * chunk));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  TrialReport report;
  report.command = "verify " + to_string(kind);
  report.seed = cfg.seed;
  report.trials = trials;
  report.bound = cfg.interior_knots + cfg.degree;
  for (const auto& o : outcomes) {
    report.max_z = std::max(report.max_z, o->z);
    if (o->violation) {
      ++report.violations;
      if (report.counterexamples.size() < kMaxWitnesses && o->checked) {
        report.counterexamples.push_back(*o->checked);
        report.failures.push_back(o->failure);
      }
    } else if (o->tight && o->checked && report.witnesses.size() < kMaxWitnesses) {
      report.witnesses.push_back(*o->checked);
    }
  }
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

/// Process exit code for a finished verification run.
inline int exit_code_for(const TrialReport& report) { return report.violations == 0 ? 0 : 1; }

}  // namespace splinezero
