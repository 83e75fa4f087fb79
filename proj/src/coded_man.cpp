// MAN-structured schemes: YMA+, HT1, PK+ and HT1+PK.
//
// Subfile coordinates are the columns of a code matrix G with one row g_T per
// T ∈ Ω^t_[K]; YMA+ and PK+ use the identity (uncoded MAN placement), HT1 and
// HT1+PK an MDS code with C(K′,t) columns. User k caches T(e_n, g_T) for T ∋ k.
// The private variants add key packets T(p_k, ξ) that complete the user's
// rows to a basis, and send query rows instead of demand rows.

#include "hotplug/errors.hpp"
#include "hotplug/mds.hpp"
#include "hotplug/multicast.hpp"
#include "hotplug/schemes_nonprivate.hpp"
#include "hotplug/schemes_private.hpp"
#include "scheme_util.hpp"

namespace hotplug {

namespace {

using detail::binom_z;

struct Variant {
  std::string name;
  bool coded;       // MDS code over C(K′,t) subfiles instead of C(K,t) uncoded ones
  bool ground_all;  // multicast over all K users (offline users mimic the first leader)
  bool keyed;       // privacy keys and query vectors
};

class CodedMan final : public Scheme {
 public:
  CodedMan(const SystemParams& p, Variant v) : Scheme(p), v_(std::move(v)) {
    const std::size_t limit = v_.coded ? p.k_active : p.k_total;
    if (p.t > limit)
      fail(Errc::unsupported_params, v_.name + " needs t <= " + std::to_string(limit) + ", got t=" + std::to_string(p.t));
    rows_total_ = binom_z(p.k_total, p.t);
    parts_ = v_.coded ? binom_z(p.k_active, p.t) : rows_total_;
    own_ = p.t == 0 ? 0 : binom_z(p.k_total - 1, p.t - 1);
    if (v_.coded) {
      g_ = mds::vandermonde({parts_, rows_total_, p.q});
    } else {
      g_ = gf::Matrix::identity(parts_, p.q);
    }
    if (v_.keyed) choose_key_rows();
  }

  std::string name() const override { return v_.name; }
  std::size_t subpacketization() const override { return parts_; }
  bool is_private() const override { return v_.keyed; }

  TradeoffPoint declared_point() const override {
    const auto& p = params_;
    const std::int64_t n = static_cast<std::int64_t>(p.n_files);
    const std::int64_t r = v_.keyed ? std::min<std::int64_t>(p.k_active, n - 1)
                                    : std::min<std::int64_t>(p.k_active, n);
    const std::int64_t kg = static_cast<std::int64_t>(v_.ground_all ? p.k_total : p.k_active);
    const std::int64_t t = static_cast<std::int64_t>(p.t);
    const BigInt parts = parts_;
    Rational m = make_rational(BigInt(n) * own_ + (v_.keyed ? BigInt(eta()) : BigInt(0)), parts);
    Rational rr = make_rational(binom(kg, t + 1) - binom(kg - r, t + 1), parts);
    return {m, rr};
  }

  std::vector<UserSecret> secret_space() const override {
    if (!v_.keyed) return {UserSecret{}};
    std::vector<UserSecret> out;
    for (auto& k : key_space(params_.n_files, params_.q)) out.push_back({k, 0});
    return out;
  }

  UserSecret sample_secret(Rng& rng) const override {
    if (!v_.keyed) return {};
    return {sample_key(params_.n_files, params_.q, rng), 0};
  }

  Placement place(const FileLibrary& lib, const std::vector<UserSecret>& secrets) const override {
    check_library(lib);
    const auto& p = params_;
    Placement out;
    out.secrets = secrets;
    for (std::size_t k = 0; k < p.k_total; ++k) {
      gf::Matrix forms(0, p.n_files * parts_, p.q);
      const auto owned = owned_rows(k);
      for (std::size_t n = 0; n < p.n_files; ++n) {
        auto e = detail::unit(p.n_files, n);
        for (auto row : owned) forms.append_row(tensor_form(e, g_.row(row), p.q));
      }
      if (v_.keyed) {
        const auto& key = secrets.at(k).key;
        for (std::size_t i = 0; i < key_rows_[k].rows(); ++i) forms.append_row(tensor_form(key, key_rows_[k].row(i), p.q));
      }
      UserCache cache;
      cache.secret = secrets.at(k);
      for (std::size_t i = 0; i < forms.rows(); ++i) cache.packets.push_back(apply_form(forms.row(i), lib, parts_));
      out.caches.push_back(std::move(cache));
      out.forms.push_back(std::move(forms));
    }
    return out;
  }

  Transcript deliver(const Placement& placement, const FileLibrary& lib, const DemandVector& d) const override {
    check_library(lib);
    const auto& p = params_;
    gf::Matrix active_rows(0, p.n_files, p.q);
    for (std::size_t i = 0; i < d.active.size(); ++i) {
      if (v_.keyed)
        active_rows.append_row(query_vector(placement.secrets.at(d.active[i]).key, d.demands[i], p.q));
      else
        active_rows.append_row(detail::unit(p.n_files, d.demands[i]));
    }
    Subset leaders = leader_set(active_rows, d.active);
    Subset ground = v_.ground_all ? subsets(p.k_total, p.k_total).front() : d.active;
    gf::Matrix rows(0, p.n_files, p.q);
    std::vector<Sym> stand_in = leaders.empty() ? std::vector<Sym>(p.n_files, 0)
                                                : active_rows.row_vector(d.slot_of(leaders.front()));
    for (auto u : ground) {
      if (contains(d.active, u)) rows.append_row(active_rows.row(d.slot_of(u)));
      else rows.append_row(stand_in);
    }

    Transcript x;
    x.side.active = d.active;
    x.side.leaders = leaders;
    if (v_.keyed) {
      x.side.queries = rows;
    } else {
      for (std::size_t i = 0; i < rows.rows(); ++i)
        for (std::size_t n = 0; n < p.n_files; ++n)
          if (rows(i, n)) x.side.demands.push_back(n);
    }
    multicast::Plan plan(ground, p.t, rows, leaders);
    multicast::emit(plan, block_form(), lib, parts_, x);
    return x;
  }

  SymbolVector decode(std::size_t v, const UserCache& cache, const Transcript& x, std::size_t demand) const override {
    const auto& p = params_;
    const gf::Field f(p.q);
    Subset ground = v_.ground_all ? subsets(p.k_total, p.k_total).front() : x.side.active;
    gf::Matrix rows = v_.keyed ? *x.side.queries : demand_matrix(x.side.demands, p.n_files, p.q);
    multicast::Plan plan(ground, p.t, rows, x.side.leaders);

    // T(a, g_W) for W ∋ v, assembled from the cached T(e_n, g_W).
    auto from_cache = [&](std::span<const Sym> a, const Subset& w) {
      const std::size_t idx = detail::index_containing(p.k_total, v, w);
      SymbolVector acc(width(), 0);
      for (std::size_t n = 0; n < p.n_files; ++n) detail::axpy(f, acc, a[n], cache.packets.at(n * own_ + idx));
      return acc;
    };
    auto interference = [&](std::size_t j, const Subset& w) { return from_cache(plan.row_of(j), w); };

    const auto wanted = subsets_of(ground, p.t);
    gf::Matrix system(0, parts_, p.q);
    std::vector<SymbolVector> values;
    for (const auto& w : wanted) {
      system.append_row(g_.row(subset_index(p.k_total, w)));
      if (contains(w, v)) {
        values.push_back(cache.packets.at(demand * own_ + detail::index_containing(p.k_total, v, w)));
        continue;
      }
      SymbolVector y = multicast::extract(plan, x, 0, with(w, v), v, width(), interference);
      if (v_.keyed) detail::sub_into(f, y, key_term(v, cache, w));
      values.push_back(std::move(y));
    }
    return detail::invert_system(system, values);
  }

  std::vector<MdsUse> mds_matrices() const override {
    if (!v_.coded) return {};
    std::vector<MdsUse> out{{v_.name + ".G", g_, parts_, true}};
    return out;
  }

 private:
  std::size_t eta() const { return parts_ > own_ ? parts_ - own_ : 0; }

  std::vector<std::size_t> owned_rows(std::size_t k) const {
    std::vector<std::size_t> out;
    if (params_.t == 0) return out;
    for (const auto& w : subsets(params_.k_total, params_.t))
      if (contains(w, k)) out.push_back(subset_index(params_.k_total, w));
    return out;
  }

  // ξ rows: scan g_T for T ∌ k in lexicographic order and keep those that
  // enlarge the span of the user's own rows, until η are kept.
  void choose_key_rows() {
    const auto& p = params_;
    for (std::size_t k = 0; k < p.k_total; ++k) {
      gf::RowSpace span(parts_, p.q);
      gf::Matrix basis(0, parts_, p.q);
      for (auto r : owned_rows(k)) {
        span.insert(g_.row(r));
        basis.append_row(g_.row(r));
      }
      gf::Matrix keys(0, parts_, p.q);
      for (const auto& w : subsets(p.k_total, p.t)) {
        if (keys.rows() == eta()) break;
        if (contains(w, k)) continue;
        auto row = g_.row(subset_index(p.k_total, w));
        if (span.insert(row)) keys.append_row(row);
      }
      if (keys.rows() != eta())
        fail(Errc::infeasible_xi, "user " + std::to_string(k + 1) + " found " + std::to_string(keys.rows()) +
                                      " independent key rows, need " + std::to_string(eta()));
      if (span.rank() != parts_) fail(Errc::infeasible_xi, "key rows do not complete a basis");
      key_rows_.push_back(keys);
      basis_.push_back(gf::vstack(basis, keys));
    }
  }

  // T(p_v, g_W) from the cached MAN part and key packets.
  SymbolVector key_term(std::size_t v, const UserCache& cache, const Subset& w) const {
    const auto& p = params_;
    const gf::Field f(p.q);
    auto c = gf::row_combination(basis_[v], g_.row(subset_index(p.k_total, w)));
    if (!c) fail(Errc::decode_failure, "key span does not cover g_W");
    const auto& key = cache.secret.key;
    const std::size_t n_own = basis_[v].rows() - key_rows_[v].rows();
    SymbolVector acc(width(), 0);
    for (std::size_t i = 0; i < n_own; ++i) {
      if ((*c)[i] == 0) continue;
      for (std::size_t n = 0; n < p.n_files; ++n)
        detail::axpy(f, acc, f.mul((*c)[i], key[n]), cache.packets.at(n * own_ + i));
    }
    for (std::size_t i = 0; i < key_rows_[v].rows(); ++i)
      detail::axpy(f, acc, (*c)[n_own + i], cache.packets.at(p.n_files * own_ + i));
    return acc;
  }

  multicast::BlockForm block_form() const {
    return [this](std::span<const Sym> row, const Subset& w) {
      return tensor_form(row, g_.row(subset_index(params_.k_total, w)), params_.q);
    };
  }

  Variant v_;
  std::size_t rows_total_ = 0;
  std::size_t parts_ = 0;
  std::size_t own_ = 0;
  gf::Matrix g_;
  std::vector<gf::Matrix> key_rows_;
  std::vector<gf::Matrix> basis_;
};

}  // namespace

std::unique_ptr<Scheme> make_yma_plus(const SystemParams& p) {
  return std::make_unique<CodedMan>(p, Variant{"yma_plus", false, true, false});
}
std::unique_ptr<Scheme> make_ht1(const SystemParams& p) {
  return std::make_unique<CodedMan>(p, Variant{"ht1", true, false, false});
}
std::unique_ptr<Scheme> make_pk_plus(const SystemParams& p) {
  return std::make_unique<CodedMan>(p, Variant{"pk_plus", false, true, true});
}
std::unique_ptr<Scheme> make_ht1_pk(const SystemParams& p) {
  return std::make_unique<CodedMan>(p, Variant{"ht1_pk", true, false, true});
}

}  // namespace hotplug
