#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "splinezero/boxspline.hpp"
#include "splinezero/bspline.hpp"
#include "splinezero/census.hpp"
#include "splinezero/harness.hpp"
#include "splinezero/json_io.hpp"

namespace splinezero::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string format_vector(const RationalVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += v[i].to_string();
  }
  return out + ")";
}

inline nlohmann::json vector_json(const RationalVector& v) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : v) j.push_back(e.to_string());
  return j;
}

inline nlohmann::json matrix_json(const RationalMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void print_pieces(std::ostream& out, const Spline& s) {
  const auto& k = s.knots();
  out << "(-inf, " << k.front() << "]: " << s.pieces().front() << "\n";
  for (std::size_t j = 1; j <= s.span_count(); ++j) {
    out << "[" << k[j - 1] << ", " << k[j] << "]: " << s.domain_piece(j) << "\n";
  }
  out << "[" << k.back() << ", +inf): " << s.pieces().back() << "\n";
}

inline RationalVector parse_point(const std::string& text) {
  RationalVector out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(',', start);
    out.push_back(Rational::parse(text.substr(start, pos == std::string::npos ? pos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

inline int run_bspline(int m, const std::optional<std::string>& at, bool json,
                       std::ostream& out) {
  const Spline b = cardinal_bspline(m);
  std::optional<Rational> x;
  if (at) x = Rational::parse(*at);
  if (json) {
    nlohmann::json doc{{"command", "bspline"}, {"m", m}, {"spline", spline_to_json(b)}};
    if (x) doc["eval"] = {{"x", x->to_string()}, {"value", b(*x).to_string()}};
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "B_" << m << ": degree " << m << ", support [0, " << m + 1 << "]\n";
  print_pieces(out, b);
  if (x) out << "B_" << m << "(" << *x << ") = " << b(*x) << "\n";
  return kExitOk;
}

inline int run_zeros(const std::string& path, const std::optional<std::string>& from,
                     const std::optional<std::string>& to, bool json, std::ostream& out) {
  const Spline s = spline_from_json_text(read_file(path));
  const Rational a = from ? Rational::parse(*from) : s.first_knot();
  const Rational b = to ? Rational::parse(*to) : s.last_knot();
  const ZeroReport report = census_between(s, a, b);
  const auto theorem = check_theorem_bound(s);
  const auto prop5 = check_prop5(s);
  const auto cor10 = check_corollary10(s);

  if (json) {
    nlohmann::json domains = nlohmann::json::array();
    for (std::size_t j = 0; j < report.domains.size(); ++j) {
      const auto& d = report.domains[j];
      domains.push_back({{"from", report.knots[j].to_string()},
                         {"to", report.knots[j + 1].to_string()},
                         {"identically_zero", d.identically_zero},
                         {"interior_roots", d.interior_roots ? nlohmann::json(*d.interior_roots)
                                                             : nlohmann::json(nullptr)}});
    }
    nlohmann::json knot_zero = nlohmann::json::array();
    for (bool z : report.knot_is_zero) knot_zero.push_back(z);
    nlohmann::json doc{
        {"command", "zeros"},
        {"from", a.to_string()},
        {"to", b.to_string()},
        {"Z", report.component_count},
        {"domains", domains},
        {"knot_is_zero", knot_zero},
        {"theorem9", {{"Z", theorem.z}, {"n", theorem.n}, {"m", theorem.m},
                      {"bound", theorem.bound}, {"gross_bound", theorem.gross_bound},
                      {"pass", theorem.pass}}},
        {"prop5", {{"applicable", prop5.is_applicable}, {"n_ge_m_plus_1", prop5.n_ge_m_plus_1},
                   {"interior_Z", prop5.interior_z}, {"interior_bound", prop5.interior_bound},
                   {"total_Z", prop5.total_z}, {"total_bound", prop5.total_bound},
                   {"pass", prop5.pass}}},
        {"corollary10", {{"hyp1", cor10.hyp1}, {"hyp2", cor10.hyp2},
                         {"conclusion", cor10.conclusion_holds},
                         {"consistent", cor10.consistent}}}};
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "Z = " << report.component_count << " on [" << a << ", " << b << "]\n";
  for (std::size_t j = 0; j < report.domains.size(); ++j) {
    const auto& d = report.domains[j];
    out << "  [" << report.knots[j] << ", " << report.knots[j + 1] << "]: ";
    if (d.identically_zero) {
      out << "identically zero\n";
    } else {
      out << *d.interior_roots << " interior root(s)\n";
    }
  }
  out << "zero knots:";
  for (std::size_t i = 0; i < report.knots.size(); ++i) {
    if (report.knot_is_zero[i]) out << " " << report.knots[i];
  }
  out << "\n";
  out << "theorem bound: Z = " << theorem.z << " <= n+m-1 = " << theorem.bound << ": "
      << (theorem.pass ? "pass" : "FAIL") << "\n";
  if (prop5.is_applicable) {
    out << "compact-support bound: interior Z = " << prop5.interior_z
        << " <= n-m-1 = " << prop5.interior_bound << ": " << (prop5.pass ? "pass" : "FAIL")
        << "\n";
  } else {
    out << "compact-support bound: not applicable\n";
  }
  out << "identically-zero criterion: hyp1 " << (cor10.hyp1 ? "yes" : "no") << ", hyp2 "
      << (cor10.hyp2 ? "yes" : "no") << ", consistent "
      << (cor10.consistent ? "yes" : "NO") << "\n";
  return kExitOk;
}

inline int run_extend(const std::string& in_path, const std::string& out_path,
                      std::ostream& out) {
  const Spline s = spline_from_json_text(read_file(in_path));
  const Spline ext = extend_compact(s);
  std::ofstream file(out_path);
  if (!file) throw ParseError("cannot write '" + out_path + "'");
  file << spline_to_json(ext).dump() << "\n";
  out << "extended to support [" << ext.first_knot() << ", " << ext.last_knot() << "] with "
      << ext.knots().size() << " knots\n";
  return kExitOk;
}

inline nlohmann::json report_json(const TrialReport& r) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(spline_to_json(w));
  return {{"command", r.command},   {"seed", r.seed},   {"trials", r.trials},
          {"violations", r.violations}, {"max_Z", r.max_z}, {"bound", r.bound},
          {"witnesses", witnesses}, {"elapsed_ms", r.elapsed_ms}};
}

inline int run_conjecture(const std::string& vectors, bool json, std::ostream& out) {
  const VectorConfig x = VectorConfig::parse(vectors);
  const ConjectureVerdict v = conjecture_verdict(x);
  if (json) {
    nlohmann::json omega = nlohmann::json::array();
    for (const auto& p : v.omega.points) omega.push_back(vector_json(p));
    nlohmann::json doc{{"command", "conjecture"},
                       {"vectors", x.to_string()},
                       {"unimodular", v.unimodular.unimodular},
                       {"omega", omega},
                       {"proper_sublattice", v.omega.proper_sublattice},
                       {"matrix", matrix_json(v.matrix)},
                       {"det", v.determinant.to_string()},
                       {"invertible", v.invertible},
                       {"vacuous", v.vacuous}};
    if (v.unimodular.witness) {
      doc["witness"] = {{"columns", v.unimodular.witness->columns},
                        {"det", v.unimodular.witness->det.get_str()}};
    }
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "X = " << x.to_string() << "\n";
  out << "unimodular: " << (v.unimodular.unimodular ? "yes" : "no");
  if (v.unimodular.witness) {
    const auto& w = *v.unimodular.witness;
    out << " (minor of vectors";
    for (auto c : w.columns) out << " " << c + 1;
    out << " has det " << w.det.get_str() << ")";
  }
  out << "\n";
  if (v.omega.proper_sublattice) {
    out << "note: X generates a proper sublattice; Omega uses half of that lattice\n";
  }
  out << "|Omega| = " << v.omega.points.size() << "\n";
  out << "Omega:";
  for (const auto& p : v.omega.points) out << " " << format_vector(p);
  out << "\n";
  out << "A_X =\n";
  for (std::size_t r = 0; r < v.matrix.rows(); ++r) {
    out << "  [";
    for (std::size_t c = 0; c < v.matrix.cols(); ++c) {
      if (c > 0) out << ", ";
      out << v.matrix(r, c);
    }
    out << "]\n";
  }
  if (v.vacuous) out << "Omega is empty: vacuous 0x0 matrix\n";
  out << "det = " << v.determinant << "\n";
  out << "invertible: " << (v.invertible ? "yes" : "NO") << "\n";
  return kExitOk;
}

inline int run_boxspline(const std::string& vectors, const std::string& at, bool json,
                         std::ostream& out) {
  const VectorConfig x = VectorConfig::parse(vectors);
  const RationalVector p = parse_point(at);
  const Rational value = box_spline_eval(x, p);
  if (json) {
    out << nlohmann::json{{"command", "boxspline"}, {"vectors", x.to_string()},
                          {"x", vector_json(p)}, {"value", value.to_string()}}
                .dump(2)
        << "\n";
    return kExitOk;
  }
  out << "B_X" << format_vector(p) << " = " << value << "\n";
  return kExitOk;
}

}  // namespace detail

/// Entry point of the splinezero tool. Exit codes: 0 success (and no
/// violations), 1 a verification found a violation, 2 usage or input error.
inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact spline zero counting and box-spline conjecture checks"};
  app.require_subcommand(1);

  auto* bspline = app.add_subcommand("bspline", "Cardinal B-spline B_m");
  int bs_m = 0;
  std::optional<std::string> bs_eval;
  bool bs_json = false;
  bspline->add_option("--m", bs_m, "Degree")->required();
  bspline->add_option("--eval", bs_eval, "Evaluate at P/Q");
  bspline->add_flag("--json", bs_json, "JSON output");

  auto* zeros = app.add_subcommand("zeros", "Separated-zero census of a spline document");
  std::string z_in;
  std::optional<std::string> z_from, z_to;
  bool z_json = false;
  zeros->add_option("--in", z_in, "Spline JSON file")->required();
  zeros->add_option("--from", z_from, "Left end P/Q (default: first knot)");
  zeros->add_option("--to", z_to, "Right end P/Q (default: last knot)");
  zeros->add_flag("--json", z_json, "JSON output");

  auto* extend = app.add_subcommand("extend", "Compactly supported extension");
  std::string e_in, e_out;
  extend->add_option("--in", e_in, "Spline JSON file")->required();
  extend->add_option("--out", e_out, "Output spline JSON file")->required();

  auto* verify = app.add_subcommand("verify", "Seeded randomized verification suite");
  std::string v_kind;
  GeneratorConfig cfg;
  int v_knots = 0;
  std::size_t v_trials = 0;
  bool v_json = false, v_timing = false;
  unsigned v_threads = std::max(1u, std::thread::hardware_concurrency());
  std::string v_lo = "-4", v_hi = "4";
  verify->add_option("--kind", v_kind, "theorem9|prop5|corollary10|extension|rolle")->required();
  verify->add_option("--m", cfg.degree, "Spline degree")->required();
  verify->add_option("--knots", v_knots, "n: polynomiality domains between the outer knots")
      ->required();
  verify->add_option("--trials", v_trials, "Random trials")->required();
  verify->add_option("--seed", cfg.seed, "Master seed")->required();
  verify->add_option("--num-bound", cfg.numerator_bound, "Numerator bound for random rationals");
  verify->add_option("--den-bound", cfg.denominator_bound, "Denominator bound for random rationals");
  verify->add_option("--lo", v_lo, "Left outer knot");
  verify->add_option("--hi", v_hi, "Right outer knot");
  verify->add_option("--threads", v_threads, "Worker threads");
  verify->add_flag("--json", v_json, "JSON report");
  verify->add_flag("--timing", v_timing, "Record wall time in elapsed_ms (otherwise 0)");

  auto* conjecture = app.add_subcommand("conjecture", "Conjecture matrix A_X and its determinant");
  std::string c_vectors;
  bool c_json = false;
  conjecture->add_option("--vectors", c_vectors, "e.g. \"1,0;1,1;0,1\"")->required();
  conjecture->add_flag("--json", c_json, "JSON output");

  auto* boxspline = app.add_subcommand("boxspline", "Evaluate the box spline B_X");
  std::string b_vectors, b_eval;
  bool b_json = false;
  boxspline->add_option("--vectors", b_vectors, "e.g. \"1,0;1,1;0,1\"")->required();
  boxspline->add_option("--eval", b_eval, "Point \"x,y\" (or \"x\")")->required();
  boxspline->add_flag("--json", b_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*bspline) return detail::run_bspline(bs_m, bs_eval, bs_json, out);
    if (*zeros) return detail::run_zeros(z_in, z_from, z_to, z_json, out);
    if (*extend) return detail::run_extend(e_in, e_out, out);
    if (*conjecture) return detail::run_conjecture(c_vectors, c_json, out);
    if (*boxspline) return detail::run_boxspline(b_vectors, b_eval, b_json, out);
    if (*verify) {
      if (v_knots < 1) throw RangeError("--knots must be >= 1");
      cfg.interior_knots = v_knots - 1;
      cfg.range_lo = Rational::parse(v_lo);
      cfg.range_hi = Rational::parse(v_hi);
      SuiteOptions options;
      options.threads = v_threads;
      TrialReport report =
          run_verification_suite(parse_suite_kind(v_kind), cfg, v_trials, options);
      if (!v_timing) report.elapsed_ms = 0;
      if (v_json) {
        out << detail::report_json(report).dump(2) << "\n";
      } else {
        out << report.command << ": seed " << report.seed << ", " << report.trials
            << " trials, violations " << report.violations << ", max Z " << report.max_z
            << ", bound " << report.bound << ", tight witnesses " << report.witnesses.size()
            << "\n";
      }
      for (std::size_t i = 0; i < report.counterexamples.size(); ++i) {
        err << "violation: " << report.failures[i] << "\n"
            << spline_to_json(report.counterexamples[i]).dump() << "\n";
      }
      return exit_code_for(report) == 0 ? kExitOk : kExitViolation;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace splinezero::cli
