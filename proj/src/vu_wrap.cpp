#include "hotplug/errors.hpp"
#include "hotplug/schemes_private.hpp"
#include "scheme_util.hpp"

namespace hotplug {

namespace {

SystemParams expanded(const SystemParams& p) {
  SystemParams e = p;
  e.k_active = p.k_active * p.n_files;
  e.k_total = p.k_total * p.n_files;
  return e;
}

// Real user k owns virtual users kN..kN+N−1 of the inner scheme and keeps
// the cache of virtual user kN+τ_k.
class VirtualUsers final : public Scheme {
 public:
  VirtualUsers(std::string inner_name, const SystemParams& p, bool pad)
      : Scheme(p), inner_name_(std::move(inner_name)), pad_(pad) {
    for (const auto& e : registered_schemes())
      if (e.name == inner_name_ && e.is_private)
        fail(Errc::unsupported_params, "vu() wraps non-private schemes only, got '" + inner_name_ + "'");
    inner_ = make_scheme(inner_name_, expanded(p));
  }

  std::string name() const override { return "vu(" + inner_name_ + ")"; }
  std::size_t subpacketization() const override { return inner_->subpacketization(); }
  bool is_private() const override { return pad_; }
  TradeoffPoint declared_point() const override { return inner_->declared_point(); }
  std::vector<MdsUse> mds_matrices() const override { return inner_->mds_matrices(); }

  std::vector<UserSecret> secret_space() const override {
    if (!pad_) return {UserSecret{}};
    std::vector<UserSecret> out;
    for (std::size_t tau = 0; tau < params_.n_files; ++tau) out.push_back({{}, tau});
    return out;
  }
  UserSecret sample_secret(Rng& rng) const override {
    if (!pad_) return {};
    std::uniform_int_distribution<std::size_t> dist(0, params_.n_files - 1);
    return {{}, dist(rng)};
  }

  Placement place(const FileLibrary& lib, const std::vector<UserSecret>& secrets) const override {
    check_library(lib);
    auto inner = std::make_shared<Placement>(inner_->place(lib, default_secrets(*inner_)));
    Placement out;
    out.secrets = secrets;
    for (std::size_t k = 0; k < params_.k_total; ++k) {
      const std::size_t virt = k * params_.n_files + secrets.at(k).tau;
      UserCache cache = inner->caches.at(virt);
      cache.secret = secrets.at(k);
      out.caches.push_back(std::move(cache));
      out.forms.push_back(inner->forms.at(virt));
    }
    out.inner = std::move(inner);
    return out;
  }

  Transcript deliver(const Placement& placement, const FileLibrary& lib, const DemandVector& d) const override {
    check_library(lib);
    const std::size_t n_files = params_.n_files;
    DemandVector virt;
    std::vector<std::size_t> offsets;
    for (std::size_t i = 0; i < d.active.size(); ++i) {
      const std::size_t s = (placement.secrets.at(d.active[i]).tau + n_files - d.demands[i]) % n_files;
      offsets.push_back(s);
      for (std::size_t l = 0; l < n_files; ++l) {
        virt.active.push_back(d.active[i] * n_files + l);
        virt.demands.push_back(shifted_identity(s, l, n_files));
      }
    }
    Transcript in = inner_->deliver(*placement.inner, lib, virt);
    Transcript x;
    x.payload = std::move(in.payload);
    x.side.active = d.active;
    x.side.offsets = std::move(offsets);
    x.side.nested.push_back(std::move(in.side));
    x.sent_forms = std::move(in.sent_forms);
    x.omitted_forms = std::move(in.omitted_forms);
    return x;
  }

  SymbolVector decode(std::size_t v, const UserCache& cache, const Transcript& x, std::size_t demand) const override {
    Transcript in;
    in.payload = x.payload;
    in.side = x.side.nested.at(0);
    UserCache virt_cache = cache;
    virt_cache.secret = inner_->secret_space().front();
    return inner_->decode(v * params_.n_files + cache.secret.tau, virt_cache, in, demand);
  }

 private:
  std::string inner_name_;
  bool pad_;
  std::unique_ptr<Scheme> inner_;
};

}  // namespace

std::unique_ptr<Scheme> make_vu(const std::string& inner, const SystemParams& p, bool pad) {
  if (p.n_files < 2) fail(Errc::unsupported_params, "vu() needs N >= 2");
  return std::make_unique<VirtualUsers>(inner, p, pad);
}

}  // namespace hotplug
