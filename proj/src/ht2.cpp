#include "hotplug/errors.hpp"
#include "hotplug/mds.hpp"
#include "hotplug/schemes_nonprivate.hpp"
#include "scheme_util.hpp"

namespace hotplug {

namespace {

// Placement Z_k = g_k·(F_1 + … + F_N), one coded subfile per user, with
// [g_1; …; g_K] a K × K′ MDS code.
class Ht2 final : public Scheme {
 public:
  explicit Ht2(const SystemParams& p) : Scheme(p) {
    if (p.k_active < p.n_files)
      fail(Errc::unsupported_params, "ht2 needs K' >= N, got K'=" + std::to_string(p.k_active) +
                                         " N=" + std::to_string(p.n_files));
    g_ = mds::vandermonde({p.k_active, p.k_total, p.q});
  }

  std::string name() const override { return "ht2"; }
  std::size_t subpacketization() const override { return params_.k_active; }

  TradeoffPoint declared_point() const override {
    const std::int64_t ka = static_cast<std::int64_t>(params_.k_active);
    const std::int64_t n = static_cast<std::int64_t>(params_.n_files);
    return {make_rational(1, ka), make_rational(n * (ka - 1), ka)};
  }

  Placement place(const FileLibrary& lib, const std::vector<UserSecret>& secrets) const override {
    check_library(lib);
    Placement out;
    out.secrets = secrets;
    for (std::size_t k = 0; k < params_.k_total; ++k) {
      gf::Matrix forms(0, params_.n_files * parts(), params_.q);
      forms.append_row(tensor_form(detail::ones(params_.n_files), g_.row(k), params_.q));
      out.caches.push_back({{apply_form(forms.row(0), lib, parts())}, secrets.at(k)});
      out.forms.push_back(std::move(forms));
    }
    return out;
  }

  Transcript deliver(const Placement&, const FileLibrary& lib, const DemandVector& d) const override {
    check_library(lib);
    const auto& p = params_;
    Transcript x;
    x.side.active = d.active;
    x.side.demands = d.demands;
    const auto classes = detail::demand_classes(d, p.n_files);
    bool all_demanded = true;
    for (const auto& c : classes) all_demanded = all_demanded && !c.empty();
    if (!all_demanded) {
      for (std::size_t n = 0; n < p.n_files; ++n) {
        if (classes[n].empty()) continue;
        auto f = lib.file(n);
        x.payload.push_back({"F" + std::to_string(n + 1), {f.begin(), f.end()}});
      }
      return x;
    }
    auto coded = [&](const std::vector<Sym>& g, std::size_t n) {
      return apply_form(tensor_form(detail::unit(p.n_files, n), g, p.q), lib, parts());
    };
    // Step 1: g_u F_n for every active u and every file it does not want.
    for (std::size_t i = 0; i < d.active.size(); ++i)
      for (std::size_t n = 0; n < p.n_files; ++n)
        if (n != d.demands[i])
          x.payload.push_back({"g" + std::to_string(d.active[i] + 1) + "F" + std::to_string(n + 1),
                               coded(g_.row_vector(d.active[i]), n)});
    // Step 2: leader-difference messages inside each demand class.
    const gf::Field f(p.q);
    for (std::size_t n = 0; n < p.n_files; ++n) {
      const auto& cls = classes[n];
      x.side.leaders.push_back(cls.front());
      for (std::size_t i = 1; i < cls.size(); ++i) {
        std::vector<Sym> g(parts());
        for (std::size_t c = 0; c < parts(); ++c) g[c] = f.add(g_(cls.front(), c), g_(cls[i], c));
        x.payload.push_back({"g" + std::to_string(cls.front() + 1) + "F" + std::to_string(n + 1) + "+g" +
                                 std::to_string(cls[i] + 1) + "F" + std::to_string(n + 1),
                             coded(g, n)});
      }
    }
    return x;
  }

  SymbolVector decode(std::size_t v, const UserCache& cache, const Transcript& x, std::size_t demand) const override {
    const auto& p = params_;
    const gf::Field f(p.q);
    DemandVector d{x.side.active, x.side.demands};
    const auto classes = detail::demand_classes(d, p.n_files);
    bool all_demanded = true;
    for (const auto& c : classes) all_demanded = all_demanded && !c.empty();
    if (!all_demanded) {
      std::size_t idx = 0;
      for (std::size_t n = 0; n < demand; ++n) idx += classes[n].empty() ? 0 : 1;
      return x.payload.at(idx).symbols;
    }
    auto step1 = [&](std::size_t u, std::size_t n) -> const SymbolVector& {
      const std::size_t du = d.demand_of(u);
      return x.payload.at(d.slot_of(u) * (p.n_files - 1) + (n < du ? n : n - 1)).symbols;
    };
    std::size_t step2_first = d.active.size() * (p.n_files - 1);
    for (std::size_t n = 0; n < demand; ++n) step2_first += classes[n].size() - 1;
    const auto& own_class = classes[demand];

    // Remove the other files from the cached sum: g_v F_d.
    SymbolVector own = cache.packets.at(0);
    for (std::size_t n = 0; n < p.n_files; ++n)
      if (n != demand) detail::sub_into(f, own, step1(v, n));

    std::vector<SymbolVector> y(d.active.size());
    for (auto u : d.active)
      if (d.demand_of(u) != demand) y[d.slot_of(u)] = step1(u, demand);
    const std::size_t leader = own_class.front();
    SymbolVector lead = own;
    if (v != leader) {
      lead = x.payload.at(step2_first + position(own_class, v) - 1).symbols;
      detail::sub_into(f, lead, own);
    }
    y[d.slot_of(leader)] = lead;
    for (std::size_t i = 1; i < own_class.size(); ++i) {
      SymbolVector yj = x.payload.at(step2_first + i - 1).symbols;
      detail::sub_into(f, yj, lead);
      y[d.slot_of(own_class[i])] = std::move(yj);
    }
    return detail::invert_system(g_.select_rows(d.active), y);
  }

  std::vector<MdsUse> mds_matrices() const override { return {{"ht2.G", g_, params_.k_active, true}}; }

 private:
  std::size_t parts() const { return params_.k_active; }
  gf::Matrix g_;
};

}  // namespace

std::unique_ptr<Scheme> make_ht2(const SystemParams& p) { return std::make_unique<Ht2>(p); }

}  // namespace hotplug
