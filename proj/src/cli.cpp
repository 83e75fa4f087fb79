#include "hotplug/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hotplug/bounds.hpp"
#include "hotplug/errors.hpp"
#include "hotplug/verify.hpp"

namespace hotplug::cli {

namespace {

using nlohmann::json;

struct Config {
  std::string scheme;
  std::vector<std::string> schemes;
  std::vector<std::string> bounds;
  std::size_t ka = 0, k = 0, n = 0;
  std::optional<std::size_t> t;
  std::optional<std::uint32_t> q;
  std::size_t b_factor = 1;
  std::uint64_t seed = 1;
  std::size_t grid = 128;
  bool privacy = false;
  std::string out;
  std::string format = "csv";
};

SystemParams params_of(const Config& c) {
  SystemParams p;
  p.k_active = c.ka;
  p.k_total = c.k;
  p.n_files = c.n;
  p.t = c.t.value_or(0);
  p.q = c.q.value_or(2);
  p.b_factor = c.b_factor;
  return p;
}

std::string fmt_float(const Rational& r) {
  std::ostringstream os;
  os << std::setprecision(10) << to_double(r);
  return os.str();
}

json point_json(const Rational& m, const Rational& r, bool corner) {
  return {{"M", to_string(m)}, {"R", to_string(r)}, {"M_float", to_double(m)}, {"R_float", to_double(r)},
          {"is_corner", corner}};
}

// Writes to --out when given, else to `out`.
void emit(const Config& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) fail(Errc::config, "cannot write '" + c.out + "'");
  f << text;
}

bool is_sampled(const std::string& name) {
  const auto& s = bounds::sampled_names();
  return std::find(s.begin(), s.end(), name) != s.end();
}

int cmd_tradeoff(const Config& c, std::ostream& out, std::ostream& err) {
  if (c.schemes.empty() && c.bounds.empty()) fail(Errc::config, "tradeoff needs --schemes or --bounds");
  SystemParams p = params_of(c);
  p.validate();
  std::vector<TradeoffCurve> envelopes;
  std::vector<std::string> sampled;
  for (const auto& s : c.schemes) {
    if (is_sampled(s)) sampled.push_back(s);
    else envelopes.push_back(bounds::achievable_curve(s, p));
  }
  for (const auto& b : c.bounds) {
    if (!is_sampled(b)) fail(Errc::config, "unknown bound '" + b + "'");
    if (b == "exact_small" && p.k_active != 2) {
      err << "note: exact_small is only known for K' = 2, skipped\n";
      continue;
    }
    sampled.push_back(b);
  }
  const auto grid = bounds::memory_grid(p, envelopes, c.grid);

  if (c.format == "json") {
    json doc = {{"schema", 1}, {"params", verify::params_json(p)}, {"curves", json::array()}};
    for (const auto& e : envelopes) {
      json pts = json::array();
      for (const auto& pt : e.points) pts.push_back(point_json(pt.m, pt.r, true));
      doc["curves"].push_back({{"name", e.name}, {"kind", "envelope"}, {"points", pts}});
    }
    for (const auto& s : sampled) {
      json pts = json::array();
      for (const auto& m : grid) pts.push_back(point_json(m, bounds::sampled_value(s, p, m), false));
      doc["curves"].push_back({{"name", s}, {"kind", "sampled"}, {"points", pts}});
    }
    emit(c, doc.dump(2) + "\n", out);
    return 0;
  }
  if (c.format != "csv") fail(Errc::config, "unknown format '" + c.format + "'");
  std::ostringstream os;
  os << "scheme,M_num,M_den,R_num,R_den,M_float,R_float,is_corner\n";
  auto row = [&](const std::string& name, const Rational& m, const Rational& r, bool corner) {
    os << name << ',' << numerator(m) << ',' << denominator(m) << ',' << numerator(r) << ',' << denominator(r) << ','
       << fmt_float(m) << ',' << fmt_float(r) << ',' << (corner ? 1 : 0) << '\n';
  };
  for (const auto& e : envelopes)
    for (const auto& pt : e.points) row(e.name, pt.m, pt.r, true);
  for (const auto& s : sampled)
    for (const auto& m : grid) row(s, m, bounds::sampled_value(s, p, m), false);
  emit(c, os.str(), out);
  return 0;
}

// Smallest prime the scheme accepts when --q is absent.
std::unique_ptr<Scheme> build_scheme(const Config& c, SystemParams& p) {
  if (c.q) return make_scheme(c.scheme, p);
  for (std::uint32_t q = 2; q < gf::max_modulus; q = gf::next_prime_above(q)) {
    p.q = q;
    try {
      return make_scheme(c.scheme, p);
    } catch (const Error& e) {
      if (e.code() != Errc::field_too_small) throw;
    }
  }
  fail(Errc::field_too_small, "no prime below " + std::to_string(gf::max_modulus) + " fits " + c.scheme);
}

int cmd_verify(const Config& c, std::ostream& out) {
  if (c.scheme.empty()) fail(Errc::config, "verify needs --scheme");
  SystemParams p = params_of(c);
  auto scheme = build_scheme(c, p);
  const auto lib = FileLibrary::random(p.n_files, scheme->file_length(), p.q, c.seed);

  verify::Report report;
  report.scheme = scheme->name();
  report.params = scheme->params();
  report.declared = scheme->declared_point();
  verify::CorrectnessOptions opts;
  opts.seed = c.seed;
  report.correctness = verify::verify_correctness(*scheme, lib, opts);
  report.accounting_ok =
      report.correctness.measured_m == report.declared.m && report.correctness.measured_r == report.declared.r;
  report.mds = verify::verify_mds(*scheme);
  if (c.privacy) {
    const std::vector<FileLibrary> libs = {lib,
                                           FileLibrary::repeated(p.n_files, scheme->file_length(), p.q, c.seed + 1)};
    report.privacy = verify::verify_privacy(*scheme, libs);
    if (!report.privacy->enumerable) fail(Errc::guard_rail, report.privacy->reason);
  }
  emit(c, report.to_json().dump(2) + "\n", out);
  return report.exit_code();
}

struct Regime {
  std::string name;
  std::string achievable;
  std::string converse;
  Rational limit;
};

int cmd_gap(const Config& c, std::ostream& out) {
  SystemParams p = params_of(c);
  p.validate();
  std::vector<Regime> regimes = {{"nonprivate", "decen_plus", "yma_lb", 2}};
  if (p.n_files >= 2) {
    if (p.k_active >= p.n_files)
      regimes.push_back({"private_ka_ge_n", "yma_vu", "combined_private", parse_rational("2.00884")});
    else
      regimes.push_back({"private_ka_lt_n", "pk_plus", "combined_private", parse_rational("5.4606")});
  }
  json doc = {{"schema", 1}, {"params", verify::params_json(p)}, {"grid_steps", c.grid}, {"regimes", json::array()}};
  bool all_ok = true;
  for (const auto& r : regimes) {
    std::vector<TradeoffCurve> curves;
    if (!is_sampled(r.achievable)) curves.push_back(bounds::achievable_curve(r.achievable, p));
    const auto grid = bounds::memory_grid(p, curves, c.grid);
    bounds::Curve ach = [&](const Rational& m) -> std::optional<Rational> {
      if (curves.empty()) return bounds::sampled_value(r.achievable, p, m);
      return bounds::evaluate(curves[0].points, m);
    };
    bounds::Curve conv = [&](const Rational& m) -> std::optional<Rational> {
      return bounds::sampled_value(r.converse, p, m);
    };
    const auto g = bounds::gap_report(ach, conv, grid);
    const bool ok = g.violations.empty() && g.max_ratio <= r.limit;
    all_ok = all_ok && ok;
    json viol = json::array();
    for (const auto& m : g.violations) viol.push_back(to_string(m));
    doc["regimes"].push_back({{"name", r.name},
                              {"achievable", r.achievable},
                              {"converse", r.converse},
                              {"max_ratio", verify::rational_json(g.max_ratio)},
                              {"argmax_M", to_string(g.argmax_m)},
                              {"compared", g.compared},
                              {"limit", to_string(r.limit)},
                              {"violations", viol},
                              {"ok", ok}});
  }
  doc["ok"] = all_ok;
  emit(c, doc.dump(2) + "\n", out);
  return all_ok ? verify::exit_pass : verify::exit_accounting;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hotplug coded caching: schemes, bounds and verification", "hotplug"};
  app.set_config("--config", "", "key=value file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--scheme", c.scheme, "scheme to run, e.g. ht1 or vu(ht3)");
  app.add_option("--schemes", c.schemes, "curves to emit")->delimiter(',');
  app.add_option("--bounds", c.bounds, "converse bounds to emit")->delimiter(',');
  app.add_option("--ka", c.ka, "active users K'")->required();
  app.add_option("--k", c.k, "total users K")->required();
  app.add_option("--n", c.n, "files N")->required();
  app.add_option("--t", c.t, "scheme parameter t");
  app.add_option("--q", c.q, "field size; smallest adequate prime when omitted");
  app.add_option("--b-factor", c.b_factor, "symbols per subfile")->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "library and key seed");
  app.add_option("--grid", c.grid, "uniform memory grid steps")->check(CLI::PositiveNumber);
  app.add_flag("--privacy", c.privacy, "also run the exact privacy check");
  app.add_option("--out", c.out, "output file");
  app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  auto* tradeoff = app.add_subcommand("tradeoff", "emit achievable curves and bounds");
  auto* verify_cmd = app.add_subcommand("verify", "run a scheme exhaustively and report");
  auto* gap = app.add_subcommand("gap", "multiplicative gap to the converse");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 1;
  }
  try {
    if (tradeoff->parsed()) return cmd_tradeoff(c, out, err);
    if (verify_cmd->parsed()) return cmd_verify(c, out);
    if (gap->parsed()) return cmd_gap(c, out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    if (e.code() == Errc::config) err << app.get_formatter()->make_help(&app, "hotplug", CLI::AppFormatMode::Normal);
    return 1;
  }
  return 1;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace hotplug::cli
