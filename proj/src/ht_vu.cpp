#include "hotplug/errors.hpp"
#include "hotplug/mds.hpp"
#include "hotplug/schemes_private.hpp"
#include "scheme_util.hpp"

namespace hotplug {

namespace {

// L = K′(N−1)+1 subfiles, G is KN×L with every L rows independent. User j
// picks τ_j ∈ [N] and caches Σ_n T(e_n, g_{jN+τ_j}).
class HtVu final : public Scheme {
 public:
  explicit HtVu(const SystemParams& p) : Scheme(p) {
    if (p.n_files < 2) fail(Errc::unsupported_params, "ht_vu needs N >= 2; with one file there is nothing to hide");
    g_ = mds::vandermonde({parts(), p.k_total * p.n_files, p.q});
  }

  std::string name() const override { return "ht_vu"; }
  std::size_t subpacketization() const override { return params_.k_active * (params_.n_files - 1) + 1; }
  bool is_private() const override { return true; }

  TradeoffPoint declared_point() const override {
    const auto l = static_cast<std::int64_t>(parts());
    const auto n = static_cast<std::int64_t>(params_.n_files);
    return {make_rational(1, l), make_rational(n * (l - 1), l)};
  }

  std::vector<UserSecret> secret_space() const override {
    std::vector<UserSecret> out;
    for (std::size_t tau = 0; tau < params_.n_files; ++tau) out.push_back({{}, tau});
    return out;
  }
  UserSecret sample_secret(Rng& rng) const override {
    std::uniform_int_distribution<std::size_t> dist(0, params_.n_files - 1);
    return {{}, dist(rng)};
  }

  Placement place(const FileLibrary& lib, const std::vector<UserSecret>& secrets) const override {
    check_library(lib);
    const auto& p = params_;
    Placement out;
    out.secrets = secrets;
    for (std::size_t k = 0; k < p.k_total; ++k) {
      gf::Matrix forms(0, p.n_files * parts(), p.q);
      forms.append_row(tensor_form(detail::ones(p.n_files), g_.row(k * p.n_files + secrets.at(k).tau), p.q));
      UserCache cache;
      cache.secret = secrets.at(k);
      cache.packets.push_back(apply_form(forms.row(0), lib, parts()));
      out.caches.push_back(std::move(cache));
      out.forms.push_back(std::move(forms));
    }
    return out;
  }

  Transcript deliver(const Placement& placement, const FileLibrary& lib, const DemandVector& d) const override {
    check_library(lib);
    const auto& p = params_;
    const std::size_t n_files = p.n_files;
    Transcript x;
    x.side.active = d.active;
    for (std::size_t i = 0; i < d.active.size(); ++i) {
      const std::size_t s = (placement.secrets.at(d.active[i]).tau + n_files - d.demands[i]) % n_files;
      x.side.offsets.push_back(s);
      for (std::size_t l = 0; l < n_files; ++l) {
        const std::size_t excluded = shifted_identity(s, l, n_files);
        const auto g = g_.row(d.active[i] * n_files + l);
        for (std::size_t n = 0; n < n_files; ++n) {
          if (n == excluded) continue;
          auto form = tensor_form(detail::unit(n_files, n), g, p.q);
          x.payload.push_back({"T(e" + std::to_string(n + 1) + ",g" + std::to_string(d.active[i] * n_files + l + 1) + ")",
                               apply_form(form, lib, parts())});
        }
      }
    }
    return x;
  }

  SymbolVector decode(std::size_t v, const UserCache& cache, const Transcript& x, std::size_t demand) const override {
    const auto& p = params_;
    const gf::Field f(p.q);
    const std::size_t n_files = p.n_files;
    const auto& active = x.side.active;
    const std::size_t slot = position(active, v);
    const std::size_t tau = cache.secret.tau;
    auto index = [&](std::size_t slot_i, std::size_t l, std::size_t n, std::size_t excluded) {
      return (slot_i * n_files + l) * (n_files - 1) + (n < excluded ? n : n - 1);
    };

    gf::Matrix system(0, parts(), p.q);
    std::vector<SymbolVector> values;
    // Unlock T(e_d, g_{vN+τ}) from the cached sum.
    SymbolVector own = cache.packets.at(0);
    for (std::size_t n = 0; n < n_files; ++n)
      if (n != demand) detail::sub_into(f, own, x.payload.at(index(slot, tau, n, demand)).symbols);
    system.append_row(g_.row(v * n_files + tau));
    values.push_back(std::move(own));

    for (std::size_t i = 0; i < active.size(); ++i) {
      const std::size_t s = x.side.offsets.at(i);
      for (std::size_t l = 0; l < n_files; ++l) {
        const std::size_t excluded = shifted_identity(s, l, n_files);
        if (excluded == demand) continue;
        system.append_row(g_.row(active[i] * n_files + l));
        values.push_back(x.payload.at(index(i, l, demand, excluded)).symbols);
      }
    }
    if (system.rows() != parts())
      fail(Errc::decode_failure, "ht_vu collected " + std::to_string(system.rows()) + " symbols, expected " +
                                     std::to_string(parts()));
    return detail::invert_system(system, values);
  }

  std::vector<MdsUse> mds_matrices() const override { return {{"ht_vu.G", g_, parts(), true}}; }

 private:
  std::size_t parts() const { return subpacketization(); }
  gf::Matrix g_;
};

}  // namespace

std::unique_ptr<Scheme> make_ht_vu(const SystemParams& p) { return std::make_unique<HtVu>(p); }

}  // namespace hotplug
