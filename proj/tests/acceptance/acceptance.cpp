// One process per criterion: `acceptance <n>` prints a single
// "criterion n: PASS|FAIL ..." line and exits nonzero on failure.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "hotplug/bounds.hpp"
#include "hotplug/errors.hpp"
#include "hotplug/gf.hpp"
#include "hotplug/mds.hpp"
#include "hotplug/schemes_private.hpp"
#include "hotplug/verify.hpp"

using namespace hotplug;

namespace {

using Clock = std::chrono::steady_clock;

SystemParams make(std::size_t ka, std::size_t k, std::size_t n, std::size_t t = 0, std::uint32_t q = 2) {
  SystemParams p;
  p.k_active = ka;
  p.k_total = k;
  p.n_files = n;
  p.t = t;
  p.q = q;
  return p;
}

Rational rat(std::int64_t a, std::int64_t b = 1) { return make_rational(a, b); }

std::string pt(const Rational& m, const Rational& r) { return "(" + to_string(m) + "," + to_string(r) + ")"; }

// Smallest prime in [2, q_max] the scheme accepts.
std::unique_ptr<Scheme> smallest_field(const std::function<std::unique_ptr<Scheme>(const SystemParams&)>& build,
                                       SystemParams& p, std::uint32_t q_max = gf::max_modulus) {
  for (std::uint32_t q = 2; q <= q_max; q = gf::next_prime_above(q)) {
    p.q = q;
    try {
      return build(p);
    } catch (const Error& e) {
      if (e.code() != Errc::field_too_small) throw;
    }
  }
  return nullptr;
}

std::unique_ptr<Scheme> build(const std::string& name, SystemParams p) {
  return smallest_field([&](const SystemParams& s) { return make_scheme(name, s); }, p);
}

FileLibrary library_for(const Scheme& s, std::uint64_t seed = 1) {
  return FileLibrary::random(s.params().n_files, s.file_length(), s.params().q, seed);
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!pass) detail << "; ";
      else detail.str("");
      pass = false;
      detail << what;
    }
  }
};

// Measures (M, R) exhaustively; a decode failure is recorded.
std::optional<TradeoffPoint> measure(Outcome& o, const Scheme& s) {
  const auto lib = library_for(s);
  verify::CorrectnessOptions opts;
  opts.key_draws = s.is_private() ? 2 : 1;
  const auto res = verify::verify_correctness(s, lib, opts);
  if (!res.ok || !res.omission_ok) {
    o.require(false, s.name() + " " + s.params().describe() + " decode: " + res.counterexample);
    return std::nullopt;
  }
  return TradeoffPoint{res.measured_m, res.measured_r};
}

void expect_point(Outcome& o, const std::string& name, const SystemParams& p, const Rational& m, const Rational& r,
                  std::vector<TradeoffPoint>* collect = nullptr) {
  const auto s = build(name, p);
  if (!s) return o.require(false, name + ": no field");
  const auto got = measure(o, *s);
  if (!got) return;
  o.require(got->m == m && got->r == r, name + " measured " + pt(got->m, got->r) + " want " + pt(m, r));
  if (collect) collect->push_back(*got);
}

std::vector<Rational> uniform_grid(std::size_t n, std::size_t steps) {
  std::vector<Rational> g;
  for (std::size_t i = 0; i <= steps; ++i)
    g.push_back(rat(static_cast<std::int64_t>(n * i), static_cast<std::int64_t>(steps)));
  return g;
}

bool runtime_ok(Outcome& o, Clock::time_point start, double limit_s) {
  const double s = std::chrono::duration<double>(Clock::now() - start).count();
  o.require(s < limit_s, "runtime " + std::to_string(s) + " s over " + std::to_string(limit_s) + " s");
  return s < limit_s;
}

// Every scheme instance used by criteria 1-3 and 5.
struct Instance {
  std::string name;
  SystemParams params;
};

std::vector<Instance> point_instances() {
  return {
      {"ht1", make(2, 3, 2, 1)},       {"ht2", make(2, 3, 2)},           {"ht2", make(3, 4, 3)},
      {"ht1", make(3, 4, 3, 1)},       {"ht3", make(3, 4, 3)},           {"ht1_pk", make(3, 6, 3, 1)},
      {"ht1_pk", make(3, 6, 3, 2)},    {"ht3_pk", make(3, 6, 3)},        {"ht_vu", make(3, 6, 3)},
      {"vu(ht1)", make(3, 6, 3, 1)},   {"vu(ht3)", make(3, 6, 3)},
  };
}

std::vector<Instance> private_instances() {
  return {
      {"pk_plus", make(2, 2, 2, 0)}, {"pk_plus", make(2, 2, 2, 1)}, {"pk_plus", make(2, 3, 2, 1)},
      {"ht1_pk", make(2, 3, 2, 1)},  {"ht3_pk", make(3, 3, 2)},     {"ht_vu", make(2, 2, 2)},
      {"ht_vu", make(2, 3, 2)},      {"vu(ht1)", make(2, 2, 2, 1)}, {"vu(ht2)", make(2, 2, 2)},
      {"vu(ht3)", make(3, 3, 2)},
  };
}

std::vector<Instance> control_instances() {
  return {{"yma_plus", make(2, 3, 2, 1)}, {"ht1", make(2, 3, 2, 1)}, {"ht2", make(2, 2, 2)}, {"ht3", make(3, 3, 2)}};
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const auto start = Clock::now();
  const auto p = make(2, 3, 2);
  std::vector<TradeoffPoint> pts = {{0, 2}, {2, 0}};
  expect_point(o, "ht1", make(2, 3, 2, 1), 1, rat(1, 2), &pts);
  expect_point(o, "ht2", p, rat(1, 2), 1, &pts);
  const auto env = bounds::lower_envelope(pts);
  std::size_t mismatches = 0;
  for (const auto& m : uniform_grid(2, 64))
    if (*bounds::evaluate(env, m) != bounds::exact_small_lb(p, m)) ++mismatches;
  o.require(mismatches == 0, std::to_string(mismatches) + " grid points differ from the exact optimum");
  runtime_ok(o, start, 1);
  if (o.pass) o.detail << "(1,1/2) and (1/2,1) measured; envelope equals the K'=2 optimum on 65 points";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto start = Clock::now();
  std::vector<TradeoffPoint> pts = {{0, 3}, {3, 0}};
  expect_point(o, "ht2", make(3, 4, 3), rat(1, 3), 2, &pts);
  expect_point(o, "ht1", make(3, 4, 3, 1), 1, 1, &pts);
  expect_point(o, "ht3", make(3, 4, 3), 2, rat(1, 3), &pts);
  const auto env = bounds::lower_envelope(pts);
  // Published converse at (3,4,3), taken as external reference data.
  const std::vector<TradeoffPoint> converse = {{0, 3}, {rat(1, 3), 2}, {rat(2, 3), rat(4, 3)},
                                               {1, 1}, {2, rat(1, 3)}, {3, 0}};
  auto grid = uniform_grid(3, 64);
  for (const auto& c : converse) grid.push_back(c.m);
  std::size_t bad = 0;
  for (const auto& m : grid) {
    const Rational a = *bounds::evaluate(env, m), c = *bounds::evaluate(converse, m);
    const bool gap_allowed = m > rat(1, 3) && m < 1;
    if (gap_allowed ? a < c : a != c) ++bad;
  }
  o.require(bad == 0, std::to_string(bad) + " grid points disagree with the converse");
  runtime_ok(o, start, 5);
  if (o.pass) o.detail << "(1/3,2) (1,1) (2,1/3) measured; envelope tight outside (1/3,1)";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto start = Clock::now();
  const auto p = make(3, 6, 3);
  expect_point(o, "ht1_pk", make(3, 6, 3, 1), rat(5, 3), 1);
  expect_point(o, "ht1_pk", make(3, 6, 3, 2), 5, rat(1, 3));
  expect_point(o, "ht3_pk", p, rat(7, 3), rat(1, 3));
  std::vector<TradeoffPoint> on_converse;
  expect_point(o, "ht_vu", p, rat(1, 7), rat(18, 7), &on_converse);
  expect_point(o, "vu(ht1)", make(3, 6, 3, 1), rat(1, 3), rat(7, 3));
  expect_point(o, "vu(ht3)", p, rat(8, 3), rat(1, 9), &on_converse);
  for (const auto& x : on_converse) {
    const auto lb = bounds::combined_private_lb(p, x.m);
    o.require(lb == x.r, pt(x.m, x.r) + " not on the converse, which gives " + to_string(lb));
  }
  runtime_ok(o, start, 30);
  if (o.pass) o.detail << "six private points measured; (1/7,18/7) and (8/3,1/9) lie on the converse";
  return o;
}

// The criterion 4 grid: K <= 6, K' <= 4, N <= 4, smallest field q <= 13.
struct GridRun {
  std::size_t runs = 0, cells = 0, omission_transcripts = 0, no_field = 0, unsupported = 0, guard = 0;
  std::vector<std::string> failures;
  std::vector<std::string> mds_failures;
  std::map<std::string, std::size_t> per_scheme;
};

GridRun run_grid(bool decode, bool mds) {
  GridRun g;
  for (const auto& e : registered_schemes())
    for (std::size_t n = 1; n <= 4; ++n)
      for (std::size_t ka = 1; ka <= 4; ++ka)
        for (std::size_t k = ka; k <= 6; ++k) {
          const auto base = make(ka, k, n);
          for (auto t : scheme_uses_t(e.name) ? valid_t(e.name, base) : std::vector<std::size_t>{0}) {
            SystemParams p = base;
            p.t = t;
            std::unique_ptr<Scheme> s;
            try {
              s = smallest_field([&](const SystemParams& x) { return make_scheme(e.name, x); }, p, 13);
            } catch (const Error& err) {
              if (err.code() == Errc::unsupported_params || err.code() == Errc::subpacketization_too_large) {
                ++g.unsupported;
                continue;
              }
              g.failures.push_back(e.name + " " + p.describe() + ": " + err.what());
              continue;
            }
            if (!s) {
              ++g.no_field;
              continue;
            }
            if (mds) {
              const auto r = verify::verify_mds(*s);
              if (!r.ok) g.mds_failures.push_back(e.name + " " + p.describe() + ": " + r.witness);
            }
            if (!decode) continue;
            verify::CorrectnessOptions opts;
            opts.key_draws = s->is_private() ? 2 : 1;
            try {
              const auto r = verify::verify_correctness(*s, library_for(*s), opts);
              ++g.runs;
              ++g.per_scheme[e.name];
              g.cells += r.cells;
              g.omission_transcripts += r.transcripts_with_omissions;
              if (!r.ok) g.failures.push_back(e.name + " " + p.describe() + ": " + r.counterexample);
              if (!r.omission_ok) g.failures.push_back(e.name + " " + p.describe() + ": omission unsound");
            } catch (const Error& err) {
              if (err.code() != Errc::guard_rail) throw;
              ++g.guard;
            }
          }
        }
  return g;
}

Outcome criterion4() {
  Outcome o;
  const auto start = Clock::now();
  const auto g = run_grid(true, false);
  for (const auto& f : g.failures) o.require(false, f);
  for (const auto& e : registered_schemes())
    o.require(g.per_scheme.count(e.name) > 0, e.name + " never ran on the grid");
  runtime_ok(o, start, 300);
  if (o.pass)
    o.detail << g.runs << " instances, " << g.cells << " cells, 0 failures (" << g.unsupported << " unsupported, "
             << g.no_field << " need q > 13, " << g.guard << " over guard rail)";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto start = Clock::now();
  auto check = [&](const Scheme& s) {
    const std::vector<FileLibrary> libs = {
        FileLibrary::random(s.params().n_files, s.file_length(), s.params().q, 1),
        FileLibrary::repeated(s.params().n_files, s.file_length(), s.params().q, 2)};
    return verify::verify_privacy(s, libs);
  };
  std::size_t cells = 0;
  for (const auto& [name, params] : private_instances()) {
    const auto s = build(name, params);
    const auto r = check(*s);
    cells += r.cells;
    o.require(r.enumerable, name + " " + s->params().describe() + ": " + r.reason);
    o.require(r.ok && r.max_mi_bits == 0,
              name + " " + s->params().describe() + " leaks " + std::to_string(r.max_mi_bits) + " bits at " +
                  r.counterexample);
  }
  std::vector<std::unique_ptr<Scheme>> controls;
  for (const auto& [name, params] : control_instances()) controls.push_back(build(name, params));
  {
    SystemParams p = make(2, 2, 2, 1);
    controls.push_back(smallest_field([](const SystemParams& x) { return make_vu("ht1", x, false); }, p));
  }
  for (const auto& s : controls) {
    const auto r = check(*s);
    cells += r.cells;
    o.require(r.enumerable && !r.ok && r.max_mi_bits > 0,
              s->name() + " " + s->params().describe() + " negative control shows no leak");
  }
  runtime_ok(o, start, 600);
  if (o.pass)
    o.detail << private_instances().size() << " private instances at MI = 0, " << controls.size()
             << " controls leak, " << cells << " cells";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto start = Clock::now();
  struct Case {
    std::size_t ka, k, n;
    std::string ach, conv;
    Rational limit;
  };
  const std::vector<Case> cases = {
      {5, 5, 20, "decen_plus", "yma_lb", 2},         {12, 12, 20, "decen_plus", "yma_lb", 2},
      {4, 4, 4, "decen_plus", "yma_lb", 2},          {3, 6, 3, "yma_vu", "combined_private", rat(200884, 100000)},
      {4, 8, 4, "yma_vu", "combined_private", rat(200884, 100000)},
      {5, 10, 3, "yma_vu", "combined_private", rat(200884, 100000)},
      {5, 15, 20, "pk_plus", "combined_private", rat(54606, 10000)},
      {12, 30, 20, "pk_plus", "combined_private", rat(54606, 10000)},
      {2, 4, 3, "pk_plus", "combined_private", rat(54606, 10000)},
  };
  std::ostringstream worst;
  for (const auto& c : cases) {
    const auto p = make(c.ka, c.k, c.n);
    bounds::Curve ach, conv;
    std::vector<TradeoffCurve> curves;
    if (c.ach == "decen_plus") {
      ach = [&](const Rational& m) -> std::optional<Rational> { return bounds::sampled_value(c.ach, p, m); };
    } else {
      curves.push_back(bounds::achievable_curve(c.ach, p));
      const auto pts = curves.back().points;
      ach = [pts](const Rational& m) { return bounds::evaluate(pts, m); };
    }
    conv = [&](const Rational& m) -> std::optional<Rational> { return bounds::sampled_value(c.conv, p, m); };
    const auto g = bounds::gap_report(ach, conv, bounds::memory_grid(p, curves, 128));
    const std::string tag = c.ach + " (" + std::to_string(c.ka) + "," + std::to_string(c.k) + "," +
                            std::to_string(c.n) + ")";
    o.require(g.violations.empty(), tag + " falls below its converse");
    o.require(g.max_ratio <= c.limit, tag + " gap " + std::to_string(to_double(g.max_ratio)));
    worst << " " << tag << "=" << to_double(g.max_ratio);
  }
  runtime_ok(o, start, 60);
  if (o.pass) o.detail << "gaps:" << worst.str();
  return o;
}

bool field_axioms(std::uint32_t q) {
  const gf::Field f(q);
  for (gf::Sym a = 0; a < q; ++a) {
    if (f.add(a, 0) != a || f.mul(a, 1) != a || f.add(a, f.neg(a)) != 0) return false;
    if (a != 0 && f.mul(a, f.inv(a)) != 1) return false;
    for (gf::Sym b = 0; b < q; ++b) {
      if (f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a)) return false;
      for (gf::Sym c = 0; c < q; ++c) {
        if (f.add(f.add(a, b), c) != f.add(a, f.add(b, c))) return false;
        if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) return false;
        if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))) return false;
      }
    }
  }
  return true;
}

Outcome criterion7() {
  Outcome o;
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) o.require(field_axioms(q), "field axioms fail at q=" + std::to_string(q));

  std::mt19937_64 rng(500);
  for (int i = 0; i < 500; ++i) {
    const std::uint32_t primes[] = {2, 3, 5, 7, 11, 13, 101};
    const std::uint32_t q = primes[rng() % 7];
    const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
    gf::Matrix a(rows, cols, q);
    // Every third matrix is a product of thin factors, so low rank is common.
    if (i % 3 == 0) {
      const std::size_t inner = 1 + rng() % 3;
      gf::Matrix l(rows, inner, q), r(inner, cols, q);
      for (std::size_t x = 0; x < rows; ++x)
        for (std::size_t y = 0; y < inner; ++y) l(x, y) = static_cast<gf::Sym>(rng() % q);
      for (std::size_t x = 0; x < inner; ++x)
        for (std::size_t y = 0; y < cols; ++y) r(x, y) = static_cast<gf::Sym>(rng() % q);
      a = gf::multiply(l, r);
    } else {
      for (std::size_t x = 0; x < rows; ++x)
        for (std::size_t y = 0; y < cols; ++y) a(x, y) = static_cast<gf::Sym>(rng() % q);
    }
    const auto ns = gf::nullspace(a);
    bool ok = gf::rank(a) + ns.rows() == cols;
    for (std::size_t v = 0; ok && v < ns.rows(); ++v)
      for (auto s : gf::mul_vec(a, ns.row(v))) ok = ok && s == 0;
    o.require(ok, "rank-nullity fails on random matrix " + std::to_string(i));
  }

  std::size_t mds_checked = 0;
  auto check_mds = [&](const Scheme& s) {
    const auto r = verify::verify_mds(s);
    mds_checked += r.checked.size();
    o.require(r.ok, s.name() + " " + s.params().describe() + ": " + r.witness);
  };
  for (const auto& list : {point_instances(), private_instances(), control_instances()})
    for (const auto& [name, params] : list) check_mds(*build(name, params));
  {
    SystemParams p = make(2, 2, 2, 1);
    check_mds(*smallest_field([](const SystemParams& x) { return make_vu("ht1", x, false); }, p));
  }

  const auto g = run_grid(true, true);
  for (const auto& f : g.mds_failures) o.require(false, "mds " + f);
  for (const auto& f : g.failures) o.require(false, f);
  o.require(g.omission_transcripts > 0, "no transcript with omitted messages was exercised");
  if (o.pass)
    o.detail << "axioms q<=13, 500 rank-nullity, " << mds_checked << " MDS matrices at fixed points plus the decode grid, "
             << g.omission_transcripts << " omission checks";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const std::vector<Instance> cases = {{"yma_plus", make(3, 4, 3, 1)}, {"ht1", make(3, 4, 3, 2)},
                                       {"ht3", make(3, 4, 3)},         {"pk_plus", make(2, 3, 2, 1)},
                                       {"ht3_pk", make(3, 4, 2)},      {"ht_vu", make(2, 3, 3)},
                                       {"vu(ht1)", make(2, 3, 2, 1)}};
  for (auto [name, p] : cases) {
    if (!smallest_field([&](const SystemParams& x) { return make_scheme(name, x); }, p)) {
      o.require(false, name + ": no field");
      continue;
    }
    const auto r = verify::verify_side_info_size(name, p);
    o.require(r.ok, name + ": " + r.detail);
  }
  if (o.pass) o.detail << cases.size() << " schemes: payload doubles, side info unchanged";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::function<Outcome()>> criteria = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8}};
  if (argc != 2 || !criteria.count(std::atoi(argv[1]))) {
    std::cerr << "usage: acceptance <1-8>\n";
    return 1;
  }
  const int n = std::atoi(argv[1]);
  Outcome o;
  try {
    o = criteria.at(n)();
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " " << o.detail.str() << std::endl;
  return o.pass ? 0 : 1;
}
