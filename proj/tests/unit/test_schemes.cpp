#include <doctest.h>

#include "generators.hpp"
#include "hotplug/errors.hpp"
#include "hotplug/mds.hpp"
#include "hotplug/schemes_nonprivate.hpp"
#include "hotplug/schemes_private.hpp"
#include "hotplug/verify.hpp"

using namespace hotplug;

namespace {

SystemParams make(std::size_t ka, std::size_t k, std::size_t n, std::size_t t, std::uint32_t q) {
  SystemParams p;
  p.k_active = ka;
  p.k_total = k;
  p.n_files = n;
  p.t = t;
  p.q = q;
  return p;
}

TradeoffPoint pt(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return {make_rational(a, b), make_rational(c, d)};
}

verify::CorrectnessResult run(const std::string& name, const SystemParams& p, bool sabotage = false) {
  auto s = make_scheme(name, p);
  const auto lib = FileLibrary::random(p.n_files, s->file_length(), p.q, 17);
  verify::CorrectnessOptions opts;
  opts.sabotage = sabotage;
  return verify::verify_correctness(*s, lib, opts);
}

Errc error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::config;
}

}  // namespace

TEST_CASE("declared points of the non-private schemes") {
  CHECK(make_scheme("yma_plus", make(3, 4, 3, 2, 5))->declared_point().m == make_rational(3, 2));
  CHECK(make_scheme("yma_plus", make(2, 3, 2, 3, 5))->declared_point().m == make_rational(2, 1));
  CHECK(make_scheme("ht1", make(2, 3, 2, 1, 5))->declared_point() == pt(1, 1, 1, 2));
  CHECK(make_scheme("ht1", make(3, 4, 3, 1, 7))->declared_point() == pt(1, 1, 1, 1));
  CHECK(make_scheme("ht1", make(3, 4, 3, 0, 7))->declared_point().m == 0);
  CHECK(make_scheme("ht2", make(3, 4, 3, 0, 7))->declared_point() == pt(1, 3, 2, 1));
  CHECK(make_scheme("ht3", make(3, 4, 3, 0, 11))->declared_point() == pt(2, 1, 1, 3));
}

TEST_CASE("ht1 worst-case load at (5,15,20), t=1") {
  // Closed form only; the run itself is far beyond desk scale.
  auto s = make_scheme("ht1", make(5, 15, 20, 1, 17));
  CHECK(s->declared_point() == pt(4, 1, 2, 1));
}

TEST_CASE("declared points of the private schemes at (3,6,3)") {
  CHECK(make_scheme("pk_plus", make(3, 6, 3, 2, 5))->declared_point().m == make_rational(5, 3));
  CHECK(make_scheme("ht1_pk", make(3, 6, 3, 1, 23))->declared_point() == pt(5, 3, 1, 1));
  CHECK(make_scheme("ht1_pk", make(3, 6, 3, 2, 23))->declared_point() == pt(5, 1, 1, 3));
  CHECK(make_scheme("ht1_pk", make(3, 6, 3, 0, 23))->declared_point().m == 1);
  CHECK(make_scheme("ht3_pk", make(3, 6, 3, 0, 17))->declared_point() == pt(7, 3, 1, 3));
  CHECK(make_scheme("ht3_pk", make(3, 4, 1, 0, 17))->declared_point().m == 1);
  CHECK(make_scheme("ht_vu", make(3, 6, 3, 0, 19))->declared_point() == pt(1, 7, 18, 7));
  CHECK(make_scheme("ht_vu", make(2, 3, 2, 0, 7))->declared_point() == pt(1, 3, 4, 3));
  CHECK(make_scheme("vu(ht1)", make(3, 6, 3, 1, 23))->declared_point() == pt(1, 3, 7, 3));
}

TEST_CASE("pk_plus at t=0 caches a single key") {
  auto s = make_scheme("pk_plus", make(2, 2, 2, 0, 3));
  const auto lib = FileLibrary::random(2, s->file_length(), 3, 1);
  Rng rng(4);
  const auto pl = s->place(lib, sample_secrets(*s, rng));
  REQUIRE(pl.caches[0].packets.size() == 1);
  const auto& key = pl.secrets[0].key;
  for (std::size_t i = 0; i < lib.length(); ++i)
    CHECK(pl.caches[0].packets[0][i] == (key[0] * lib.file(0)[i] + key[1] * lib.file(1)[i]) % 3);
}

TEST_CASE("ht2 sends the file whole when every user wants it") {
  auto s = make_scheme("ht2", make(2, 3, 2, 0, 5));
  const auto lib = FileLibrary::random(2, s->file_length(), 5, 1);
  const auto pl = s->place(lib, default_secrets(*s));
  const auto x = s->deliver(pl, lib, DemandVector{{0, 2}, {0, 0}});
  CHECK(x.payload_symbols() == lib.length());
}

TEST_CASE("ht3 decoding vector matches the worked (3,4,3) example") {
  // Blocks G_2 and G_3 with nodes 3..6; v_1 = [2, 9, 39] lies in both spans.
  const std::uint32_t q = 11;
  const auto g = mds::vandermonde({3, 8, q});
  const std::vector<gf::Matrix> others = {g.row_range(2, 2), g.row_range(4, 2)};
  for (const auto& basis : {annihilator_intersection(others), fat_intersection(others)}) {
    REQUIRE(basis.rows() == 1);
    const auto v = basis.row_vector(0);
    const gf::Field f(q);
    const gf::Sym scale = f.div(v[0], 2);
    CHECK(v == std::vector<gf::Sym>{f.mul(scale, 2), f.mul(scale, 9), f.mul(scale, 39 % q)});
  }
  const auto v1 = gf::Matrix::from_rows({{2, 9, 39}}, q);
  CHECK(gf::rank(gf::vstack(g.row_range(0, 2), v1)) == 3);
}

TEST_CASE("property: both intersection routes span the same space") {
  gen::Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    const auto q = gen::small_prime(rng) < 5 ? 7u : gen::small_prime(rng);
    const std::size_t dim = gen::uniform(rng, 2, 6);
    std::vector<gf::Matrix> blocks;
    for (std::size_t b = gen::uniform(rng, 2, 4); b > 0; --b)
      blocks.push_back(gen::matrix(rng, gen::uniform(rng, 1, dim), dim, q));
    const auto a = annihilator_intersection(blocks);
    const auto f = fat_intersection(blocks);
    CHECK(gf::rank(a) == a.rows());
    CHECK(gf::rank(a) == gf::rank(f));
    CHECK(gf::rank(gf::vstack(a, f)) == gf::rank(a));
    for (const auto& blk : blocks)
      for (std::size_t r = 0; r < a.rows(); ++r) CHECK(gf::row_combination(blk, a.row(r)));
  }
}

TEST_CASE("ht3_pk uses node 13 for xi at (3,6,3)") {
  auto s = make_scheme("ht3_pk", make(3, 6, 3, 0, 17));
  const auto uses = s->mds_matrices();
  REQUIRE(uses.size() == 2);
  const auto& ext = uses[1].matrix;
  CHECK(ext.rows() == 13);
  CHECK(ext.row_vector(12) == std::vector<gf::Sym>{1, 13, 169 % 17});
  CHECK(error_of([] { make_scheme("ht3_pk", make(3, 6, 3, 0, 13)); }) == Errc::field_too_small);
}

TEST_CASE("parameter rejections") {
  CHECK(error_of([] { make_scheme("flex", make(3, 4, 3, 1, 11)); }) == Errc::unsupported_params);
  CHECK(error_of([] { make_scheme("ht2", make(2, 3, 3, 0, 11)); }) == Errc::unsupported_params);
  CHECK(error_of([] { make_scheme("ht3", make(2, 3, 2, 0, 11)); }) == Errc::unsupported_params);
  CHECK(error_of([] { make_scheme("ht_vu", make(2, 3, 1, 0, 11)); }) == Errc::unsupported_params);
  CHECK(error_of([] { make_scheme("vu(ht1_pk)", make(2, 3, 2, 1, 11)); }) == Errc::unsupported_params);
  CHECK(error_of([] { make_scheme("nope", make(2, 3, 2, 1, 11)); }) == Errc::unsupported_params);
  auto p = make(4, 5, 3, 2, 31);
  p.l_t = 4;  // C(3,1)·2/1 = 6 > 4 is fine
  CHECK_NOTHROW(make_scheme("flex", p));
  p.l_t = 6;  // at the bound
  CHECK(error_of([&] { make_scheme("flex", p); }) == Errc::subpacketization_too_large);
}

TEST_CASE("flex subpacketization bound is strict") {
  CHECK(flex_max_subpacketization(3, 2) == 3);
  CHECK(flex_max_subpacketization(4, 2) == 5);
  CHECK(flex_max_subpacketization(4, 3) == 4);
  CHECK(flex_max_subpacketization(5, 3) == 8);
}

TEST_CASE("small exhaustive runs decode and meet the declared point") {
  struct Case {
    const char* name;
    SystemParams p;
  };
  const Case cases[] = {{"ht1", make(2, 3, 2, 1, 5)},      {"ht2", make(2, 3, 2, 0, 5)},
                        {"yma_plus", make(2, 3, 2, 1, 5)}, {"ht3", make(3, 4, 3, 0, 11)},
                        {"flex", make(4, 5, 2, 2, 31)},    {"pk_plus", make(2, 3, 2, 1, 3)},
                        {"ht1_pk", make(3, 4, 3, 1, 7)},   {"ht3_pk", make(3, 4, 2, 0, 11)},
                        {"ht_vu", make(2, 3, 3, 0, 11)},   {"vu(ht2)", make(2, 3, 2, 0, 11)}};
  for (const auto& c : cases) {
    CAPTURE(c.name);
    const auto r = run(c.name, c.p);
    CHECK(r.ok);
    CHECK(r.omission_ok);
    const auto d = make_scheme(c.name, c.p)->declared_point();
    CHECK(r.measured_m == d.m);
    CHECK(r.measured_r == d.r);
  }
}

TEST_CASE("sabotaged cache is caught") {
  for (const char* name : {"ht1", "ht2", "yma_plus", "ht_vu"}) {
    CAPTURE(name);
    const auto p = std::string(name) == "ht_vu" ? make(2, 2, 2, 0, 5) : make(2, 3, 2, 1, 5);
    const auto r = run(name, p, true);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.counterexample.empty());
  }
}

TEST_CASE("offline users in yma_plus share the first leader's demand") {
  // (2,3,2), t=1: with user 3 offline only multicasts touching the leaders are sent.
  auto s = make_scheme("yma_plus", make(2, 3, 2, 1, 5));
  const auto lib = FileLibrary::random(2, s->file_length(), 5, 3);
  const auto pl = s->place(lib, default_secrets(*s));
  const auto x = s->deliver(pl, lib, DemandVector{{0, 1}, {0, 0}});
  CHECK(x.side.leaders == Subset{0});
  // C(3,2) − C(2,2) messages of B/3 symbols each.
  CHECK(x.payload_symbols() * 3 == 2 * lib.length());
}

TEST_CASE("property: ht1 memory dominance") {
  for (std::size_t ka = 1; ka <= 5; ++ka)
    for (std::size_t k = ka; k <= 7; ++k)
      for (std::size_t t = 0; t <= ka; ++t) {
        const auto m = make_scheme("ht1", make(ka, k, 3, t, 257))->declared_point().m;
        const Rational floor = make_rational(static_cast<std::int64_t>(3 * t), static_cast<std::int64_t>(ka));
        CHECK(m >= floor);
        CHECK((m == floor) == (t <= 1 || k == ka));
      }
}
