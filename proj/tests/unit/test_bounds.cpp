#include <doctest.h>

#include "generators.hpp"
#include "hotplug/bounds.hpp"

using namespace hotplug;
using namespace hotplug::bounds;

namespace {

SystemParams make(std::size_t ka, std::size_t k, std::size_t n) {
  SystemParams p;
  p.k_active = ka;
  p.k_total = k;
  p.n_files = n;
  return p;
}

Rational rat(std::int64_t a, std::int64_t b = 1) { return make_rational(a, b); }

bool has_point(const std::vector<TradeoffPoint>& pts, const Rational& m, const Rational& r) {
  for (const auto& p : pts)
    if (p.m == m && p.r == r) return true;
  return false;
}

}  // namespace

TEST_CASE("cut-set examples") {
  CHECK(cutset_lb(make(2, 2, 2), 0) == 2);
  CHECK(cutset_lb(make(3, 3, 3), 2) == rat(1, 3));
  CHECK(cutset_lb(make(4, 6, 3), rat(1, 4)) == rat(9, 4));
}

TEST_CASE("YMA-type converse examples") {
  CHECK(yma_lb(make(5, 15, 20), 4) == 2);
  CHECK(yma_lb(make(3, 4, 3), 0) == 3);
  CHECK(yma_lb(make(5, 5, 2), 0) == 2);
  // N ≥ K′(K′+1)/2 with s = K′, α = 1, ℓ = 1.
  const auto p = make(4, 4, 10);
  CHECK(yma_lb(p, rat(5, 2)) >= 4 - rat(10, 1) * rat(5, 2) / 10);
}

TEST_CASE("exact small optima") {
  const auto p = make(2, 3, 2);
  CHECK(exact_small_lb(p, rat(1, 2)) == 1);
  CHECK(exact_small_lb(p, 1) == rat(1, 2));
  CHECK(exact_small_lb(p, 2) == 0);
  const auto p5 = make(2, 4, 5);
  CHECK(exact_small_lb(p5, rat(5, 2)) == rat(1, 2));
  CHECK(exact_small_lb(p5, 5) == 0);
}

TEST_CASE("privacy bound examples") {
  CHECK(privacy_lb(make(3, 6, 3), 0) == 3);
  CHECK(privacy_lb(make(3, 6, 3), rat(1, 7)) == rat(18, 7));
  CHECK(privacy_lb(make(3, 6, 3), 3) == 0);
}

TEST_CASE("decentralized load") {
  CHECK(decentralized(2, 2, 0) == 2);
  CHECK(decentralized(2, 2, 1) == rat(3, 4));
  CHECK(decentralized(3, 3, 3) == 0);
}

TEST_CASE("ht envelope at (2,3,2)") {
  const auto c = achievable_curve("ht", make(2, 3, 2));
  const std::vector<TradeoffPoint> want = {{0, 2}, {rat(1, 2), 1}, {1, rat(1, 2)}, {2, 0}};
  CHECK(c.points == want);
}

TEST_CASE("private corner points at (3,6,3)") {
  const auto p = make(3, 6, 3);
  const auto ht_pk = achievable_curve("ht_pk", p).points;
  CHECK(has_point(ht_pk, rat(5, 3), 1));
  CHECK(has_point(ht_pk, rat(7, 3), rat(1, 3)));
  const auto pk = achievable_curve("pk_plus", p).points;
  CHECK(has_point(pk, rat(5, 3), rat(16, 15)));
  CHECK(has_point(pk, 2, rat(7, 10)));
  const auto vu = corner_points("ht_and_vu", p);
  CHECK(has_point(vu, rat(1, 7), rat(18, 7)));
  CHECK(has_point(vu, rat(1, 3), rat(7, 3)));
  CHECK(has_point(vu, rat(8, 3), rat(1, 9)));
}

TEST_CASE("yma_vu uses KN users") {
  // t = 1 at (3,6,3): M = 1/6, R = [C(18,2) − C(15,2)]/18.
  const auto pts = corner_points("yma_vu", make(3, 6, 3));
  CHECK(has_point(pts, rat(1, 6), rat(153 - 105, 18)));
}

TEST_CASE("corner points beyond M = N are dropped") {
  // HT1 at t = K′ has M = N·C(K−1,K′−1) > N when K > K′.
  for (const auto& pt : corner_points("ht1", make(2, 4, 2))) CHECK(pt.m <= 2);
}

TEST_CASE("property: envelope is idempotent, convex and below every input point") {
  gen::Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    std::vector<TradeoffPoint> pts;
    for (std::size_t j = gen::uniform(rng, 1, 12); j > 0; --j)
      pts.push_back({rat(static_cast<std::int64_t>(gen::uniform(rng, 0, 24)), 4),
                     rat(static_cast<std::int64_t>(gen::uniform(rng, 0, 30)), 5)});
    const auto env = lower_envelope(pts);
    CHECK(lower_envelope(env) == env);
    for (std::size_t k = 0; k + 2 < env.size(); ++k) {
      const Rational s1 = (env[k + 1].r - env[k].r) / (env[k + 1].m - env[k].m);
      const Rational s2 = (env[k + 2].r - env[k + 1].r) / (env[k + 2].m - env[k + 1].m);
      CHECK(s1 < s2);
    }
    for (const auto& p : pts) CHECK(*evaluate(env, p.m) <= p.r);
  }
}

TEST_CASE("gap values agree with an independent rational computation") {
  // Frozen from a separate Fraction-based evaluation of the same grid.
  struct Case {
    std::size_t ka, n;
    Rational ratio, at;
  };
  const Case cases[] = {{5, 20, rat(31, 16), 10}, {12, 20, rat(4095, 2048), 10}, {4, 4, rat(15, 8), 2}};
  for (const auto& c : cases) {
    const auto p = make(c.ka, c.ka, c.n);
    const auto grid = memory_grid(p, {});
    const auto g = gap_report([&](const Rational& m) -> std::optional<Rational> { return sampled_value("decen_plus", p, m); },
                              [&](const Rational& m) -> std::optional<Rational> { return yma_lb(p, m); }, grid);
    CHECK(g.max_ratio == c.ratio);
    CHECK(g.argmax_m == c.at);
    CHECK(g.violations.empty());
  }
}

TEST_CASE("identical curves have ratio 1 and min(K',N)=1 is optimal") {
  const auto p = make(1, 3, 4);
  const auto grid = memory_grid(p, {});
  const auto g = gap_report([&](const Rational& m) -> std::optional<Rational> { return sampled_value("decen_plus", p, m); },
                            [&](const Rational& m) -> std::optional<Rational> { return yma_lb(p, m); }, grid);
  CHECK(g.max_ratio == 1);
}

TEST_CASE("property: schemes never beat the converse") {
  for (std::size_t ka = 1; ka <= 5; ++ka)
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto p = make(ka, ka + 2, n);
      for (const char* c : {"ht", "yma_plus"}) {
        const auto env = achievable_curve(c, p).points;
        for (const auto& m : memory_grid(p, {}, 32)) {
          const auto a = evaluate(env, m);
          REQUIRE(a);
          CHECK(*a >= yma_lb(p, m));
          CHECK(*a >= cutset_lb(p, m));
        }
      }
      if (n < 2) continue;
      for (const char* c : {"pk_plus", "ht_pk", "ht_and_vu", "yma_vu"}) {
        const auto env = achievable_curve(c, p).points;
        for (const auto& m : memory_grid(p, {}, 32)) CHECK(*evaluate(env, m) >= combined_private_lb(p, m));
      }
    }
}
