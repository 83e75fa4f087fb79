#include "hotplug/bounds.hpp"

#include <algorithm>
#include <set>

#include "hotplug/errors.hpp"

namespace hotplug::bounds {

namespace {

Rational r_of(std::int64_t n) { return make_rational(n, 1); }
Rational frac(std::int64_t a, std::int64_t b) { return make_rational(a, b); }
std::int64_t z(std::size_t v) { return static_cast<std::int64_t>(v); }

Rational binom_ratio(const BigInt& num, const BigInt& den) { return make_rational(num, den); }

// [C(n,t+1) − C(n−r,t+1)] / C(n,t)
Rational yma_load(std::int64_t n, std::int64_t r, std::int64_t t) {
  return binom_ratio(binom(n, t + 1) - binom(n - r, t + 1), binom(n, t));
}

bool is_private_curve(const std::string& c) {
  return c == "pk_plus" || c == "ht1_pk" || c == "ht3_pk" || c == "ht_pk" || c == "ht_vu" || c == "ht1_vu" ||
         c == "ht3_vu" || c == "ht_and_vu" || c == "yma_vu";
}

void append(std::vector<TradeoffPoint>& out, const std::vector<TradeoffPoint>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

// Cross product sign of (b−a)×(c−a).
Rational cross(const TradeoffPoint& a, const TradeoffPoint& b, const TradeoffPoint& c) {
  return (b.m - a.m) * (c.r - a.r) - (b.r - a.r) * (c.m - a.m);
}

}  // namespace

std::vector<Line> cutset_lines(std::size_t k_active, std::size_t n_files) {
  std::vector<Line> out;
  for (std::size_t s = 1; s <= std::min(n_files, k_active); ++s)
    out.push_back({r_of(z(s)), -frac(z(s), z(n_files / s))});
  return out;
}

std::vector<Line> yma_lines(std::size_t k_active, std::size_t n_files, std::size_t steps) {
  std::vector<Line> out;
  const std::int64_t n = z(n_files);
  for (std::int64_t s = 1; s <= z(std::min(n_files, k_active)); ++s) {
    for (std::size_t a = 0; a <= steps; ++a) {
      const Rational alpha = frac(z(a), z(steps));
      std::int64_t l = 1;
      while (l < s && !(frac(s * (s - 1) - l * (l - 1), 2) + alpha * s <= r_of((n - l + 1) * l))) ++l;
      const Rational slope = -(r_of(s * (s - 1) - l * (l - 1)) + 2 * alpha * s) / r_of(2 * (n - l + 1));
      out.push_back({r_of(s - 1) + alpha, slope});
    }
  }
  return out;
}

std::vector<Line> exact_small_lines(std::size_t k_active, std::size_t n_files) {
  if (k_active != 2) return {};
  const std::int64_t n = z(n_files);
  if (n == 1) return {{r_of(1), r_of(-1)}};
  if (n == 2) return {{r_of(2), r_of(-2)}, {frac(3, 2), r_of(-1)}, {r_of(1), frac(-1, 2)}};
  return {{r_of(2), frac(-3, n)}, {r_of(1), frac(-1, n)}};
}

std::vector<Line> privacy_lines(std::size_t k_active, std::size_t n_files) {
  std::vector<Line> out;
  const std::int64_t n = z(n_files);
  for (std::int64_t l = 1; l <= n; ++l) {
    const std::int64_t m = std::min(l + 1, z(k_active));
    out.push_back({r_of(l) + frac((n - l) * m, (n - l) + m), r_of(-l)});
  }
  return out;
}

Rational max_lines(const std::vector<Line>& lines, const Rational& m) {
  Rational best = 0;
  for (const auto& line : lines) best = std::max(best, line.at(m));
  return best;
}

Rational cutset_lb(const SystemParams& p, const Rational& m) { return max_lines(cutset_lines(p.k_active, p.n_files), m); }

Rational yma_lb(const SystemParams& p, const Rational& m) {
  static thread_local std::pair<std::size_t, std::size_t> key{0, 0};
  static thread_local std::vector<Line> lines;
  if (key != std::pair{p.k_active, p.n_files}) {
    key = {p.k_active, p.n_files};
    lines = yma_lines(p.k_active, p.n_files);
  }
  return max_lines(lines, m);
}

Rational exact_small_lb(const SystemParams& p, const Rational& m) {
  if (p.k_active != 2) fail(Errc::unsupported_params, "exact_small bound needs K' = 2");
  return max_lines(exact_small_lines(p.k_active, p.n_files), m);
}

Rational privacy_lb(const SystemParams& p, const Rational& m) {
  return max_lines(privacy_lines(p.k_active, p.n_files), m);
}

Rational combined_private_lb(const SystemParams& p, const Rational& m) {
  Rational v = std::max({privacy_lb(p, m), yma_lb(p, m), cutset_lb(p, m)});
  if (p.k_active == 2) v = std::max(v, exact_small_lb(p, m));
  return v;
}

Rational decentralized(std::size_t r, std::size_t n_files, const Rational& m) {
  if (m <= 0) return r_of(z(r));
  const Rational mu = m / z(n_files);
  if (mu >= 1) return 0;
  Rational keep = 1;
  for (std::size_t i = 0; i < r; ++i) keep *= (1 - mu);
  return (1 - mu) / mu * (1 - keep);
}

std::vector<TradeoffPoint> lower_envelope(std::vector<TradeoffPoint> points) {
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    return a.m < b.m || (a.m == b.m && a.r < b.r);
  });
  std::vector<TradeoffPoint> hull;
  for (const auto& pt : points) {
    if (!hull.empty() && hull.back().m == pt.m) continue;  // keep the lowest R per M
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0) hull.pop_back();
    hull.push_back(pt);
  }
  return hull;
}

std::optional<Rational> evaluate(const std::vector<TradeoffPoint>& env, const Rational& m) {
  if (env.empty() || m < env.front().m || m > env.back().m) return std::nullopt;
  for (std::size_t i = 0; i + 1 < env.size(); ++i) {
    const auto& a = env[i];
    const auto& b = env[i + 1];
    if (m <= b.m) return a.r + (b.r - a.r) * (m - a.m) / (b.m - a.m);
  }
  return env.back().r;
}

std::vector<TradeoffPoint> corner_points(const std::string& c, const SystemParams& p) {
  const std::int64_t ka = z(p.k_active), k = z(p.k_total), n = z(p.n_files);
  const std::int64_t rp = std::min(ka, n);
  std::vector<TradeoffPoint> out;
  if (c == "yma_plus") {
    for (std::int64_t t = 0; t <= k; ++t) out.push_back({frac(n * t, k), yma_load(k, rp, t)});
  } else if (c == "ht1") {
    for (std::int64_t t = 0; t <= ka; ++t)
      out.push_back({make_rational(binom(k - 1, t - 1) * n, binom(ka, t)), yma_load(ka, rp, t)});
  } else if (c == "ht2") {
    if (k >= ka && ka >= n) out.push_back({frac(1, ka), r_of(n) * frac(ka - 1, ka)});
  } else if (c == "ht3") {
    if (ka >= 3) out.push_back({frac(n * (ka - 1), ka), frac(1, ka)});
  } else if (c == "flex") {
    for (std::int64_t t = 2; t <= ka - 1; ++t) {
      const BigInt cc = binom(ka - 1, t - 1);
      const BigInt lt = (cc * t - 1) / (t - 1);
      out.push_back({make_rational(cc * n, lt), make_rational(binom(ka, t + 1) - binom(ka - rp, t + 1), lt)});
    }
  } else if (c == "ht") {
    for (const char* s : {"ht1", "ht2", "ht3", "flex"}) append(out, corner_points(s, p));
  } else if (c == "pk_plus") {
    const std::int64_t rq = std::min(ka, n - 1);
    for (std::int64_t t = 0; t <= k; ++t) out.push_back({1 + frac(t * (n - 1), k), yma_load(k, rq, t)});
  } else if (c == "ht1_pk") {
    const std::int64_t rq = std::min(ka, n - 1);
    for (std::int64_t t = 0; t <= ka; ++t) {
      const BigInt own = binom(k - 1, t - 1);
      BigInt eta = binom(ka, t) - own;
      if (eta < 0) eta = 0;
      out.push_back({make_rational(own * n + eta, binom(ka, t)), yma_load(ka, rq, t)});
    }
  } else if (c == "ht3_pk") {
    if (ka >= 3) out.push_back({r_of(n) - frac(n - 1, ka), frac(1, ka)});
  } else if (c == "ht_pk") {
    for (const char* s : {"ht1_pk", "ht3_pk"}) append(out, corner_points(s, p));
  } else if (c == "ht_vu") {
    if (n >= 2) {
      const std::int64_t l = ka * (n - 1) + 1;
      out.push_back({frac(1, l), frac(n * (l - 1), l)});
    }
  } else if (c == "ht1_vu") {
    if (n >= 2) out.push_back({frac(1, ka), r_of(n) - frac(n + 1, 2 * ka)});
  } else if (c == "ht3_vu") {
    if (n >= 2) out.push_back({r_of(n) - frac(1, ka), frac(1, ka * n)});
  } else if (c == "ht_and_vu") {
    for (const char* s : {"ht_vu", "ht1_vu", "ht3_vu"}) append(out, corner_points(s, p));
  } else if (c == "yma_vu") {
    for (std::int64_t t = 0; t <= k * n; ++t) out.push_back({frac(t, k), yma_load(k * n, n, t)});
  } else {
    fail(Errc::unsupported_params, "unknown curve '" + c + "'");
  }
  if (is_private_curve(c)) out.push_back({0, r_of(n)});
  else out.push_back({0, r_of(rp)});
  out.push_back({r_of(n), 0});
  // Corner points above M = N are dominated by (N, 0).
  std::erase_if(out, [&](const TradeoffPoint& pt) { return pt.m > n; });
  return out;
}

TradeoffCurve achievable_curve(const std::string& curve, const SystemParams& p) {
  return {curve, lower_envelope(corner_points(curve, p)), true};
}

const std::vector<std::string>& curve_names() {
  static const std::vector<std::string> names = {"yma_plus", "ht1",    "ht2",    "ht3",    "flex",
                                                 "ht",       "pk_plus", "ht1_pk", "ht3_pk", "ht_pk",
                                                 "ht_vu",    "ht1_vu", "ht3_vu", "ht_and_vu", "yma_vu"};
  return names;
}

const std::vector<std::string>& sampled_names() {
  static const std::vector<std::string> names = {"decen_plus", "decen_vu",   "cutset",          "yma_lb",
                                                 "exact_small", "privacy_lb", "combined_private"};
  return names;
}

Rational sampled_value(const std::string& name, const SystemParams& p, const Rational& m) {
  if (name == "decen_plus") return decentralized(std::min(p.k_active, p.n_files), p.n_files, m);
  if (name == "decen_vu") return decentralized(p.n_files, p.n_files, m);
  if (name == "cutset") return cutset_lb(p, m);
  if (name == "yma_lb") return yma_lb(p, m);
  if (name == "exact_small") return exact_small_lb(p, m);
  if (name == "privacy_lb") return privacy_lb(p, m);
  if (name == "combined_private") return combined_private_lb(p, m);
  fail(Errc::unsupported_params, "unknown bound '" + name + "'");
}

std::vector<Rational> memory_grid(const SystemParams& p, const std::vector<TradeoffCurve>& curves, std::size_t steps) {
  std::set<Rational> grid;
  const Rational n = make_rational(z(p.n_files), 1);
  for (std::size_t i = 0; i <= steps; ++i) grid.insert(n * frac(z(i), z(steps)));
  for (const auto& c : curves)
    for (const auto& pt : c.points)
      if (pt.m >= 0 && pt.m <= n) grid.insert(pt.m);
  return {grid.begin(), grid.end()};
}

GapReport gap_report(const Curve& achievable, const Curve& converse, const std::vector<Rational>& grid) {
  GapReport out;
  out.max_ratio = 1;
  out.argmax_m = 0;
  for (const auto& m : grid) {
    const auto a = achievable(m);
    const auto c = converse(m);
    if (!a || !c) continue;
    if (*c == 0) {
      if (*a > 0) out.violations.push_back(m);
      continue;
    }
    ++out.compared;
    if (*a < *c) out.violations.push_back(m);
    const Rational ratio = *a / *c;
    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.argmax_m = m;
    }
  }
  return out;
}

}  // namespace hotplug::bounds
