#include "hotplug/errors.hpp"
#include "hotplug/mds.hpp"
#include "hotplug/schemes_nonprivate.hpp"
#include "hotplug/schemes_private.hpp"
#include "scheme_util.hpp"

namespace hotplug {

namespace {

// User j caches T(e_n, g_{j,ℓ}) for its (K′−1)×K′ block G_j, one key term
// T(p_j, ξ) and p_j. A single message X_I = Σ_j T(q_j, φ_j) is sent, where
// φ_j lies in the row space of every other active block.
class Ht3Pk final : public Scheme {
 public:
  explicit Ht3Pk(const SystemParams& p) : Scheme(p) {
    if (p.k_active < 3) fail(Errc::unsupported_params, "ht3_pk needs K' >= 3");
    const std::size_t ka = p.k_active;
    const std::size_t code_len = p.k_total * (ka - 1);
    if (p.q <= code_len + 1)
      fail(Errc::field_too_small, "ht3_pk needs q > " + std::to_string(code_len + 1) + " for the extra node");
    g_ = mds::vandermonde({ka, code_len, p.q});
    xi_ = mds::vandermonde_row(ka, code_len + 1, p.q);
    for (std::size_t k = 0; k < p.k_total; ++k) {
      blocks_.push_back(g_.row_range(k * (ka - 1), ka - 1));
      gf::Matrix with_xi = blocks_.back();
      with_xi.append_row(xi_);
      if (gf::rank(with_xi) != ka)
        fail(Errc::condition_violated, "[G_v; xi] is singular for user " + std::to_string(k + 1));
      with_xi_.push_back(std::move(with_xi));
    }
    for (std::size_t i = 0; i < p.k_total; ++i)
      for (std::size_t j = i + 1; j < p.k_total; ++j)
        if (gf::rank(gf::vstack(blocks_[i], blocks_[j])) != ka)
          fail(Errc::condition_violated, "blocks of users " + std::to_string(i + 1) + " and " +
                                             std::to_string(j + 1) + " are not jointly full rank");
  }

  std::string name() const override { return "ht3_pk"; }
  std::size_t subpacketization() const override { return params_.k_active; }
  bool is_private() const override { return true; }

  TradeoffPoint declared_point() const override {
    const std::int64_t ka = static_cast<std::int64_t>(params_.k_active);
    const std::int64_t n = static_cast<std::int64_t>(params_.n_files);
    return {make_rational(n * ka - (n - 1), ka), make_rational(1, ka)};
  }

  std::vector<UserSecret> secret_space() const override {
    std::vector<UserSecret> out;
    for (auto& k : key_space(params_.n_files, params_.q)) out.push_back({k, 0});
    return out;
  }
  UserSecret sample_secret(Rng& rng) const override { return {sample_key(params_.n_files, params_.q, rng), 0}; }

  Placement place(const FileLibrary& lib, const std::vector<UserSecret>& secrets) const override {
    check_library(lib);
    const auto& p = params_;
    Placement out;
    out.secrets = secrets;
    for (std::size_t k = 0; k < p.k_total; ++k) {
      gf::Matrix forms(0, p.n_files * parts(), p.q);
      for (std::size_t n = 0; n < p.n_files; ++n)
        for (std::size_t i = 0; i < blocks_[k].rows(); ++i)
          forms.append_row(tensor_form(detail::unit(p.n_files, n), blocks_[k].row(i), p.q));
      forms.append_row(tensor_form(secrets.at(k).key, xi_, p.q));
      UserCache cache;
      cache.secret = secrets.at(k);
      for (std::size_t i = 0; i < forms.rows(); ++i) cache.packets.push_back(apply_form(forms.row(i), lib, parts()));
      out.caches.push_back(std::move(cache));
      out.forms.push_back(std::move(forms));
    }
    return out;
  }

  Transcript deliver(const Placement& placement, const FileLibrary& lib, const DemandVector& d) const override {
    check_library(lib);
    const auto& p = params_;
    const gf::Field f(p.q);
    gf::Matrix queries(0, p.n_files, p.q);
    for (std::size_t i = 0; i < d.active.size(); ++i)
      queries.append_row(query_vector(placement.secrets.at(d.active[i]).key, d.demands[i], p.q));
    LinearForm form(p.n_files * parts(), 0);
    for (std::size_t i = 0; i < d.active.size(); ++i) {
      auto term = tensor_form(queries.row(i), phi(d.active, d.active[i]), p.q);
      for (std::size_t c = 0; c < form.size(); ++c) form[c] = f.add(form[c], term[c]);
    }
    Transcript x;
    x.side.active = d.active;
    x.side.queries = queries;
    x.payload.push_back({"X_I", apply_form(form, lib, parts())});
    return x;
  }

  SymbolVector decode(std::size_t v, const UserCache& cache, const Transcript& x, std::size_t demand) const override {
    const auto& p = params_;
    const gf::Field f(p.q);
    const auto& active = x.side.active;
    const gf::Matrix& queries = *x.side.queries;
    const std::size_t own = parts() - 1;

    // T(a, u) for u in the row space of G_v.
    auto from_block = [&](std::span<const Sym> a, std::span<const Sym> u) {
      auto lam = gf::row_combination(blocks_[v], u);
      if (!lam) fail(Errc::decode_failure, "phi vector outside the receiver's block");
      SymbolVector acc(width(), 0);
      for (std::size_t n = 0; n < p.n_files; ++n)
        for (std::size_t i = 0; i < own; ++i)
          detail::axpy(f, acc, f.mul(a[n], (*lam)[i]), cache.packets.at(n * own + i));
      return acc;
    };

    SymbolVector y = x.payload.at(0).symbols;
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (active[i] == v) continue;
      detail::sub_into(f, y, from_block(queries.row(i), phi(active, active[i])));
    }
    // y = T(q_v, φ_v) = T(e_d, φ_v) + T(p_v, φ_v); the key term comes from [G_v; ξ].
    const auto phi_v = phi(active, v);
    auto c = gf::row_combination(with_xi_[v], phi_v);
    if (!c) fail(Errc::decode_failure, "[G_v; xi] does not span phi_v");
    const auto& key = cache.secret.key;
    for (std::size_t i = 0; i < own; ++i)
      for (std::size_t n = 0; n < p.n_files; ++n)
        detail::axpy(f, y, f.neg(f.mul((*c)[i], key[n])), cache.packets.at(n * own + i));
    detail::axpy(f, y, f.neg((*c)[own]), cache.packets.at(p.n_files * own));

    gf::Matrix system = blocks_[v];
    system.append_row(phi_v);
    std::vector<SymbolVector> values;
    for (std::size_t i = 0; i < own; ++i) values.push_back(cache.packets.at(demand * own + i));
    values.push_back(std::move(y));
    return detail::invert_system(system, values);
  }

  std::vector<MdsUse> mds_matrices() const override {
    gf::Matrix ext = g_;
    ext.append_row(xi_);
    return {{"ht3_pk.G", g_, params_.k_active, true}, {"ht3_pk.G+xi", ext, params_.k_active, true}};
  }

  // φ_j^{(I)}: first intersection basis vector passing the full-rank test
  // with G_j.
  std::vector<Sym> phi(const Subset& active, std::size_t j) const {
    std::vector<gf::Matrix> others;
    for (auto k : active)
      if (k != j) others.push_back(blocks_[k]);
    gf::Matrix candidates = annihilator_intersection(others);
    for (std::size_t r = 0; r < candidates.rows(); ++r) {
      gf::Matrix m = blocks_[j];
      m.append_row(candidates.row(r));
      if (gf::rank(m) == parts()) return candidates.row_vector(r);
    }
    fail(Errc::decoding_vector_not_found, "no phi vector for user " + std::to_string(j + 1));
  }

 private:
  std::size_t parts() const { return params_.k_active; }
  gf::Matrix g_;
  std::vector<Sym> xi_;
  std::vector<gf::Matrix> blocks_;
  std::vector<gf::Matrix> with_xi_;
};

}  // namespace

std::unique_ptr<Scheme> make_ht3_pk(const SystemParams& p) { return std::make_unique<Ht3Pk>(p); }

}  // namespace hotplug
