#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <variant>

#include "polarphi/bodies.hpp"
#include "polarphi/errors.hpp"
#include "polarphi/exact.hpp"
#include "polarphi/harness.hpp"
#include "polarphi/revolution.hpp"
#include "polarphi/sampler.hpp"

namespace polarphi::cli {
namespace {

// ---------------------------------------------------------------------------
// Reports

using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t, bool>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  std::vector<Table> tables;
  int status = Exit::ok;

  Table& add(std::string name, std::vector<std::string> columns) {
    tables.push_back({std::move(name), std::move(columns), {}});
    return tables.back();
  }
};

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string q = "\"";
          for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          return q + "\"";
        } else if constexpr (std::is_same_v<T, double>) {
          return number(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return std::to_string(v);
        }
      },
      c);
}

// Numbers go through the same %.17g path as CSV; non-finite values become strings.
std::string json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return nlohmann::json(v).dump();
        } else if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(v) ? number(v) : "\"" + number(v) + "\"";
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return std::to_string(v);
        }
      },
      c);
}

std::string render_csv(const Report& r) {
  std::string s;
  const bool labelled = r.tables.size() > 1;
  for (std::size_t t = 0; t < r.tables.size(); ++t) {
    const Table& tab = r.tables[t];
    if (t) s += '\n';
    if (labelled) s += "# " + tab.name + '\n';
    for (std::size_t i = 0; i < tab.columns.size(); ++i) s += (i ? "," : "") + tab.columns[i];
    s += '\n';
    for (const auto& row : tab.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
      s += '\n';
    }
  }
  return s;
}

std::string render_json(const Report& r) {
  std::string s = "{";
  for (std::size_t t = 0; t < r.tables.size(); ++t) {
    const Table& tab = r.tables[t];
    s += (t ? ",\n " : "\n ") + nlohmann::json(tab.name).dump() + ": [";
    for (std::size_t k = 0; k < tab.rows.size(); ++k) {
      s += k ? ",\n  {" : "\n  {";
      for (std::size_t i = 0; i < tab.columns.size(); ++i) {
        s += (i ? ", " : "") + nlohmann::json(tab.columns[i]).dump() + ": " + json_cell(tab.rows[k][i]);
      }
      s += "}";
    }
    s += tab.rows.empty() ? "]" : "\n ]";
  }
  return s + "\n}\n";
}

// ---------------------------------------------------------------------------
// Input helpers

void check_dim(int n, int lo, int hi, const std::string& what) {
  if (n < lo || n > hi) {
    throw DimensionError(what + ": dimension " + std::to_string(n) + " outside [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot read file '" + path + "'");
  return {std::istreambuf_iterator<char>(f), {}};
}

bool looks_inline(const std::string& s) {
  const auto i = s.find_first_not_of(" \t\r\n");
  return i != std::string::npos && (s[i] == '{' || s[i] == '[');
}

std::string read_document(const std::string& arg, std::istream& in) {
  if (arg == "-") return {std::istreambuf_iterator<char>(in), {}};
  if (looks_inline(arg)) return arg;
  return read_file(arg);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw DomainError("cannot parse number '" + s + "'");
  return v;
}

// "default", "geom:A:B:K" or a comma list of exponents. 1, 2 and inf are added
// when missing.
std::vector<Exponent> parse_p_grid(const std::string& spec) {
  if (spec == "default") return harness::default_p_grid();
  std::vector<Exponent> grid;
  if (spec.rfind("geom:", 0) == 0) {
    const auto parts = split(spec.substr(5), ':');
    if (parts.size() != 3) throw DomainError("grid '" + spec + "': expected geom:A:B:K");
    const double a = to_double(parts[0]), b = to_double(parts[1]);
    const double k = to_double(parts[2]);
    if (!(a >= 1.0 && b > a && std::isfinite(b)) || k < 2 || k != std::floor(k) || k > 1e5) {
      throw DomainError("grid '" + spec + "': need 1 <= A < B < inf and integer K >= 2");
    }
    const int count = int(k);
    for (int i = 0; i < count; ++i) {
      grid.emplace_back(i + 1 == count ? b : a * std::pow(b / a, double(i) / (count - 1)));
    }
  } else {
    for (const auto& token : split(spec, ',')) grid.push_back(Exponent::parse(token));
  }
  for (Exponent e : {Exponent{1.0}, Exponent{2.0}, Exponent::infinity()}) {
    if (std::find(grid.begin(), grid.end(), e) == grid.end()) grid.push_back(e);
  }
  return grid;
}

std::string join_point(const std::vector<double>& point) {
  std::string s;
  for (std::size_t i = 0; i < point.size(); ++i) s += (i ? ";" : "") + number(point[i]);
  return s;
}

// ---------------------------------------------------------------------------
// Commands

struct Options {
  // phi exact / f-eval / scan / revolution
  int dim = 0;
  std::string p = "2";
  std::string method = "f";
  double y1 = 0.0, y2 = 0.0;
  std::string grid = "default";
  // phi mc
  std::string body;
  std::uint64_t samples = 200000;
  std::string seed = "1";
  unsigned workers = 0;
  std::uint64_t max_attempts = sampler::default_max_attempts;
  // verify
  std::vector<int> dims;
  std::string inequality_dims = "2,3,5,10,20,50";
  // revolution
  std::string profile;
  bool diagnostics = false;

  exact::Tolerances exact_tol;
  harness::Settings harness_set;
  revolution::Settings rev_set;
  double theorem_bound_slack = 1e-12;
};

void add_breakdown_row(Table& t, const exact::PhiBreakdown& b, Exponent p, const std::string& method) {
  t.rows.push_back({std::int64_t(b.dim), p.value(), method, b.phi, exact::phi_euclidean_ball(b.dim), b.volume,
                    b.polar_volume, b.cross_integral, b.log_volume, b.log_polar_volume, b.log_cross_integral});
}

Report cmd_phi_exact(const Options& o) {
  check_dim(o.dim, 1, max_exact_dim, "phi exact");
  const Exponent p = Exponent::parse(o.p);
  Report r;
  auto& t = r.add("phi", {"dim", "p", "method", "phi", "conjecture_bound", "volume", "polar_volume",
                          "cross_integral", "log_volume", "log_polar_volume", "log_cross_integral"});
  if (o.method == "moments") {
    if (o.dim == 1) {
      add_breakdown_row(t, exact::phi_pball(1, p), p, "f");
    } else {
      add_breakdown_row(t, exact::phi_via_moments(o.dim, p), p, o.method);
    }
  } else {
    add_breakdown_row(t, exact::phi_pball(o.dim, p), p, o.method);
  }
  return r;
}

Report cmd_phi_mc(const Options& o, std::istream& in) {
  const auto body = bodies::parse_body(read_document(o.body, in));
  const int n = bodies::dimension(*body);
  check_dim(n, 1, max_mc_dim, "phi mc");
  const std::uint64_t seed = sampler::parse_seed(o.seed);
  const auto e = sampler::estimate_phi(body, o.samples, seed, {o.workers, o.max_attempts});
  Report r;
  r.add("estimate", {"dim", "estimate", "stderr", "samples", "seed", "primal_acceptance", "polar_acceptance"})
      .rows.push_back({std::int64_t(n), e.estimate, e.std_error, e.samples, e.seed, e.primal_acceptance,
                       e.polar_acceptance});
  return r;
}

Report cmd_f_eval(const Options& o) {
  const Exponent p = Exponent::parse(o.p);
  Report r;
  r.add("f", {"y1", "y2", "p", "f"}).rows.push_back({o.y1, o.y2, p.value(), exact::f_factor(o.y1, o.y2, p)});
  return r;
}

Report cmd_scan(const Options& o) {
  check_dim(o.dim, 1, max_exact_dim, "scan");
  const auto s = harness::scan_p_argmax(o.dim, parse_p_grid(o.grid), o.harness_set);
  const std::size_t two = std::find(s.p.begin(), s.p.end(), Exponent{2.0}) - s.p.begin();
  Report r;
  auto& t = r.add("scan", {"p", "phi", "gap_to_p2"});
  for (std::size_t i = 0; i < s.p.size(); ++i) t.rows.push_back({s.p[i].value(), s.values[i], s.values[two] - s.values[i]});
  r.add("summary", {"dim", "points", "argmax_p", "max_phi", "conjecture_bound", "unimodal", "violations", "passed"})
      .rows.push_back({std::int64_t(o.dim), std::uint64_t(s.p.size()), s.p[s.argmax].value(), s.values[s.argmax],
                       exact::phi_euclidean_ball(o.dim), s.unimodal, std::uint64_t(s.violations.size()),
                       s.passed()});
  r.status = s.passed() ? Exit::ok : Exit::violation;
  return r;
}

Report cmd_verify_theorem(const Options& o) {
  const auto grid = parse_p_grid(o.grid);
  const std::vector<int> dims = o.dims.empty() ? std::vector<int>{2, 3, 5, 10, 20} : o.dims;
  Report r;
  auto& summary = r.add("theorem", {"dim", "points", "argmax_p", "max_phi", "conjecture_bound", "bound_excess",
                                    "violations", "passed"});
  Table violations{"violations", {"dim", "check", "p", "value"}, {}};
  for (int n : dims) {
    check_dim(n, 1, max_exact_dim, "verify theorem");
    const auto s = harness::scan_p_argmax(n, grid, o.harness_set);
    const double bound = exact::phi_euclidean_ball(n);
    const double max_phi = s.values[s.argmax];
    const bool under = max_phi <= bound + o.theorem_bound_slack;
    for (const auto& v : s.violations) violations.rows.push_back({std::int64_t(n), v.check, v.point.at(0), v.value});
    if (!under) violations.rows.push_back({std::int64_t(n), "phi <= n/(n+2)^2", s.p[s.argmax].value(), max_phi - bound});
    const bool passed = s.passed() && under;
    summary.rows.push_back({std::int64_t(n), std::uint64_t(s.p.size()), s.p[s.argmax].value(), max_phi, bound,
                            max_phi - bound, std::uint64_t(s.violations.size() + (under ? 0 : 1)), passed});
    if (!passed) r.status = Exit::violation;
  }
  r.tables.push_back(std::move(violations));
  return r;
}

Report cmd_verify_harness(const Options& o) {
  const auto xs = harness::default_x_grid();
  const auto ys = harness::default_y_grid();
  const auto pairs = harness::default_pair_grid();
  const std::vector<std::pair<std::string, harness::GridReport>> reports = {
      {"monotonicity", harness::monotonicity_report(xs, ys, pairs, o.harness_set)},
      {"derivative_identities", harness::derivative_identity_report(xs, ys, pairs, o.harness_set)},
      {"convexity", harness::convexity_report(harness::default_convexity_grid(), {0.5, 2.0, 10.0}, o.harness_set)},
      {"symmetry", harness::symmetry_report(xs, ys, pairs)},
  };
  Report r;
  auto& summary = r.add("reports", {"report", "description", "points", "violations", "max_residual",
                                    "residual_tolerance", "passed"});
  Table violations{"violations", {"report", "check", "point", "value"}, {}};
  for (const auto& [name, g] : reports) {
    summary.rows.push_back({name, g.description, std::uint64_t(g.grid.size()), std::uint64_t(g.violations.size()),
                            g.max_residual, g.residual_tolerance, g.passed()});
    for (const auto& v : g.violations) violations.rows.push_back({name, v.check, join_point(v.point), v.value});
    if (!g.passed()) r.status = Exit::violation;
  }
  r.tables.push_back(std::move(violations));
  return r;
}

Report cmd_verify_inequalities(const Options& o) {
  const auto grid = parse_p_grid(o.grid);
  std::vector<int> dims = o.dims;
  if (dims.empty()) {
    for (const auto& d : split(o.inequality_dims, ',')) dims.push_back(int(to_double(d)));
  }
  Report r;
  auto& t = r.add("inequalities", {"dim", "p", "phi", "santalo_product", "santalo_bound", "lower_bound",
                                   "identity_residual", "n_phi", "santalo_holds", "chain_holds", "identity_holds"});
  for (int n : dims) {
    check_dim(n, 1, max_exact_dim, "verify inequalities");
    for (const Exponent& p : grid) {
      const auto q = exact::inequality_report(n, p, o.exact_tol);
      t.rows.push_back({std::int64_t(n), p.value(), q.phi, q.santalo_product, q.santalo_bound, q.lower_bound,
                        q.identity_residual, q.n_phi, q.santalo_holds, q.chain_holds, q.identity_holds});
      if (!q.passed()) r.status = Exit::violation;
    }
  }
  return r;
}

revolution::RevolutionProfile parse_profile(const std::string& spec, std::istream& in) {
  const bool named = spec == "ball" || spec == "cylinder" || spec == "cone" || spec.rfind("pball:", 0) == 0;
  if (named) return revolution::RevolutionProfile::named(spec);
  // Reuse the body grammar so profile documents validate exactly as they do
  // inside a body description.
  const std::string doc = read_document(spec, in);
  const auto body = bodies::parse_body(R"({"type":"revolution","dim":2,"profile":)" + doc + "}");
  return std::get<bodies::Revolution>(body->body).profile;
}

Report cmd_revolution(const Options& o, std::istream& in) {
  check_dim(o.dim, 2, max_exact_dim, "revolution");
  const auto profile = parse_profile(o.profile, in);
  const auto rep = revolution::phi_revolution(profile, o.dim, o.rev_set);
  Report r;
  r.add("revolution", {"profile", "dim", "phi", "first_summand", "second_summand", "second_summand_bound",
                       "hensley_product_sq", "santalo_ratio", "conjecture_bound", "n_phi", "n2_first_summand"})
      .rows.push_back({profile.name(), std::int64_t(o.dim), rep.phi, rep.first_summand, rep.second_summand,
                       rep.second_summand_bound, rep.hensley_product_sq, rep.santalo_ratio, rep.conjecture_bound,
                       rep.n_phi, rep.n2_first_summand});
  if (o.diagnostics) {
    auto& m = r.add("moments", {"side", "m0", "m2", "mplus"});
    m.rows.push_back({std::string("primal"), rep.primal.m0, rep.primal.m2, rep.primal.mplus});
    m.rows.push_back({std::string("polar"), rep.polar.m0, rep.polar.m2, rep.polar.mplus});
    auto& d = r.add("diagnostics", {"status", "reason"});
    try {
      revolution::decomposition_report(profile, o.dim, o.rev_set);
      d.rows.push_back({std::string("pass"), std::string()});
    } catch (const InvariantViolation& e) {
      d.rows.push_back({std::string("fail"), std::string(e.what())});
      r.status = Exit::violation;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Errors

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

int fail(std::ostream& err, int code, const std::string& kind, const std::string& what) {
  err << "error exit=" << code << " kind=" << kind << " reason=" << one_line(what) << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  std::string format = "csv";

  CLI::App app{"Exact, quadrature and Monte Carlo evaluation of the polar-pair functional phi(K)", "polarphi"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", format, "Output encoding")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  auto p_option = [&](CLI::App* sub) { sub->add_option("--p", o.p, "Exponent in [1, inf], or inf")->capture_default_str(); };
  auto tie_option = [&](CLI::App* sub) {
    sub->add_option("--tol-tie", o.harness_set.tie, "Differences at or below this count as ties")->capture_default_str();
  };

  auto* phi = app.add_subcommand("phi", "phi for a p-ball or a body");
  phi->require_subcommand(1);
  phi->fallthrough();
  auto* exact_cmd = phi->add_subcommand("exact", "Closed-form phi(B_p^n)");
  exact_cmd->add_option("--dim", o.dim, "Dimension")->required();
  p_option(exact_cmd);
  exact_cmd->add_option("--method", o.method, "f: product rule, moments: volume/moment recursion")
      ->check(CLI::IsMember({"f", "moments"}))
      ->capture_default_str();

  auto* mc = phi->add_subcommand("mc", "Monte Carlo phi for a body description");
  mc->add_option("--body", o.body, "Body JSON: a file, '-' for stdin, or inline text")->required();
  mc->add_option("--samples", o.samples, "Sample pairs")->capture_default_str();
  mc->add_option("--seed", o.seed, "Decimal or 0x-prefixed hexadecimal")->capture_default_str();
  mc->add_option("--workers", o.workers, "Threads, 0 for all cores; never changes the result")->capture_default_str();
  mc->add_option("--max-attempts", o.max_attempts, "Rejection proposals per draw before giving up")
      ->capture_default_str();

  auto* feval = app.add_subcommand("f-eval", "Product-rule weight f(y1, y2, p)");
  feval->add_option("--y1", o.y1)->required();
  feval->add_option("--y2", o.y2)->required();
  p_option(feval);

  auto* scan = app.add_subcommand("scan", "phi(B_p^n) over a p grid");
  scan->add_option("--dim", o.dim, "Dimension")->required();
  scan->add_option("--grid", o.grid, "default | geom:A:B:K | comma list; 1, 2, inf always added")
      ->capture_default_str();
  tie_option(scan);

  auto* verify = app.add_subcommand("verify", "Verification suites");
  verify->require_subcommand(1);
  verify->fallthrough();
  auto* theorem = verify->add_subcommand("theorem", "Argmax at p = 2 and the conjectured bound");
  theorem->add_option("--dims", o.dims, "Comma-separated dimensions")->delimiter(',');
  theorem->add_option("--grid", o.grid, "p grid")->capture_default_str();
  theorem->add_option("--tol-bound", o.theorem_bound_slack, "Slack on phi <= n/(n+2)^2")->capture_default_str();
  tie_option(theorem);

  auto* hcmd = verify->add_subcommand("harness", "Monotonicity, derivative, convexity and symmetry reports");
  hcmd->add_option("--tol-fd", o.harness_set.fd_rel_tol, "Relative finite-difference tolerance")
      ->capture_default_str();
  tie_option(hcmd);
  hcmd->add_option("--fd-step", o.harness_set.first_step, "First-difference step, relative to the pole distance")
      ->capture_default_str();
  hcmd->add_option("--fd-step2", o.harness_set.second_step, "Second-difference step, relative")
      ->capture_default_str();

  auto* ineq = verify->add_subcommand("inequalities", "Santalo product, lower chain and isotropy identity");
  ineq->add_option("--dims", o.dims, "Comma-separated dimensions [2,3,5,10,20,50]")->delimiter(',');
  ineq->add_option("--grid", o.grid, "p grid")->capture_default_str();
  ineq->add_option("--tol-identity", o.exact_tol.identity_rel, "Identity residual relative to phi")
      ->capture_default_str();
  ineq->add_option("--tol-inequality", o.exact_tol.inequality_abs, "Slack on both inequalities")
      ->capture_default_str();

  auto* rev = app.add_subcommand("revolution", "phi of a body of revolution by quadrature");
  rev->add_option("--profile", o.profile, "ball | cylinder | cone | pball:P | grid JSON (file, '-' or inline)")
      ->required();
  rev->add_option("--dim", o.dim, "Dimension")->required();
  rev->add_flag("--diagnostics", o.diagnostics, "Moments and the asserted bounds");
  rev->add_option("--tol-quad", o.rev_set.quad_abs_tol, "Absolute quadrature tolerance")->capture_default_str();
  rev->add_option("--tol-bracket", o.rev_set.bracket, "Golden-section bracket width")->capture_default_str();
  rev->add_option("--tol-bound", o.rev_set.bound_slack, "Slack on the second-summand bound")->capture_default_str();
  rev->add_option("--tol-hensley", o.rev_set.hensley_slack, "Slack on the Hensley window")->capture_default_str();
  rev->add_option("--tol-santalo", o.rev_set.santalo_slack, "Slack on the Santalo ratio")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return Exit::ok;
    }
    return fail(err, Exit::invalid_input, "usage", e.what());
  }

  try {
    Report r;
    if (exact_cmd->parsed()) r = cmd_phi_exact(o);
    else if (mc->parsed()) r = cmd_phi_mc(o, in);
    else if (feval->parsed()) r = cmd_f_eval(o);
    else if (scan->parsed()) r = cmd_scan(o);
    else if (theorem->parsed()) r = cmd_verify_theorem(o);
    else if (hcmd->parsed()) r = cmd_verify_harness(o);
    else if (ineq->parsed()) r = cmd_verify_inequalities(o);
    else if (rev->parsed()) r = cmd_revolution(o, in);
    out << (format == "json" ? render_json(r) : render_csv(r)) << std::flush;
    if (r.status == Exit::violation) err << "violation: at least one check failed\n";
    return r.status;
  } catch (const ParseError& e) {
    return fail(err, Exit::invalid_input, "parse", e.what());
  } catch (const DimensionError& e) {
    return fail(err, Exit::invalid_input, "dimension", e.what());
  } catch (const SingularMatrixError& e) {
    return fail(err, Exit::invalid_input, "singular-matrix", e.what());
  } catch (const DomainError& e) {
    return fail(err, Exit::invalid_input, "domain", e.what());
  } catch (const EnvelopeError& e) {
    return fail(err, Exit::no_convergence, "envelope", e.what());
  } catch (const ConvergenceError& e) {
    return fail(err, Exit::no_convergence, "convergence", e.what());
  } catch (const InvariantViolation& e) {
    return fail(err, Exit::violation, "invariant", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(err, Exit::invalid_input, "invalid", e.what());
  } catch (const std::exception& e) {
    return fail(err, Exit::no_convergence, "internal", e.what());
  }
}

}  // namespace polarphi::cli
