#include <map>
#include <memory>
#include <mutex>

#include "hotplug/errors.hpp"
#include "hotplug/mds.hpp"
#include "hotplug/multicast.hpp"
#include "hotplug/schemes_nonprivate.hpp"
#include "scheme_util.hpp"

namespace hotplug {

std::size_t flex_max_subpacketization(std::size_t k_active, std::size_t t) {
  if (t < 2 || t >= k_active) fail(Errc::unsupported_params, "flex needs t in [2, K'-1]");
  const std::size_t c = detail::binom_z(k_active - 1, t - 1);
  return (c * t - 1) / (t - 1);
}

gf::Matrix fat_intersection(const std::vector<gf::Matrix>& blocks) {
  if (blocks.empty()) fail(Errc::config, "fat_intersection of no blocks");
  const std::size_t l = blocks.front().cols();
  const std::uint32_t q = blocks.front().modulus();
  const gf::Field f(q);
  std::vector<std::size_t> offset{0};
  for (const auto& b : blocks) offset.push_back(offset.back() + b.rows());
  // Row block i-1 encodes E₁ᵀλ₁ − E_iᵀλ_i = 0.
  gf::Matrix fat((blocks.size() - 1) * l, offset.back(), q);
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    for (std::size_t col = 0; col < l; ++col) {
      const std::size_t r = (i - 1) * l + col;
      for (std::size_t a = 0; a < blocks[0].rows(); ++a) fat(r, offset[0] + a) = blocks[0](a, col);
      for (std::size_t a = 0; a < blocks[i].rows(); ++a) fat(r, offset[i] + a) = f.neg(blocks[i](a, col));
    }
  }
  gf::Matrix lambdas = gf::nullspace(fat);
  gf::RowSpace span(l, q);
  gf::Matrix out(0, l, q);
  for (std::size_t r = 0; r < lambdas.rows(); ++r) {
    auto lam = lambdas.row(r).subspan(0, blocks[0].rows());
    auto p = gf::vec_mul(lam, blocks[0]);
    if (span.insert(p)) out.append_row(p);
  }
  return out;
}

gf::Matrix annihilator_intersection(const std::vector<gf::Matrix>& blocks) {
  if (blocks.empty()) fail(Errc::config, "annihilator_intersection of no blocks");
  gf::Matrix stacked(0, blocks.front().cols(), blocks.front().modulus());
  for (const auto& b : blocks) stacked = gf::vstack(stacked, gf::nullspace(b));
  return gf::nullspace(stacked);
}

namespace {

// Per-user blocks E_k (C(K′−1,t−1) × L_t) cut from one MDS matrix; X_S uses
// decoding vectors p_W that lie in the row space of every E_k with k ∈ W.
class Flex final : public Scheme {
 public:
  Flex(const SystemParams& p, bool ht3) : Scheme(p), ht3_(ht3) {
    if (p.t < 2 || p.t + 1 > p.k_active)
      fail(Errc::unsupported_params, "flex needs t in [2, K'-1], got t=" + std::to_string(p.t) +
                                         " with K'=" + std::to_string(p.k_active));
    rows_ = detail::binom_z(p.k_active - 1, p.t - 1);
    parts_ = p.l_t ? *p.l_t : flex_max_subpacketization(p.k_active, p.t);
    if (parts_ == 0 || parts_ * (p.t - 1) >= rows_ * p.t)
      fail(Errc::subpacketization_too_large, "L_t=" + std::to_string(parts_) + " must satisfy 0 < L_t < " +
                                                 std::to_string(rows_) + "*" + std::to_string(p.t) + "/" +
                                                 std::to_string(p.t - 1));
    e_ = mds::vandermonde({parts_, p.k_total * rows_, p.q});
    for (std::size_t k = 0; k < p.k_total; ++k) {
      blocks_.push_back(e_.row_range(k * rows_, rows_));
      annihilators_.push_back(gf::nullspace(blocks_.back()));
    }
  }

  std::string name() const override { return ht3_ ? "ht3" : "flex"; }
  std::size_t subpacketization() const override { return parts_; }

  TradeoffPoint declared_point() const override {
    const auto& p = params_;
    const std::int64_t ka = static_cast<std::int64_t>(p.k_active);
    const std::int64_t r = std::min<std::int64_t>(ka, static_cast<std::int64_t>(p.n_files));
    const std::int64_t t = static_cast<std::int64_t>(p.t);
    const BigInt l = parts_;
    return {make_rational(BigInt(p.n_files * rows_), l), make_rational(binom(ka, t + 1) - binom(ka - r, t + 1), l)};
  }

  Placement place(const FileLibrary& lib, const std::vector<UserSecret>& secrets) const override {
    check_library(lib);
    const auto& p = params_;
    Placement out;
    out.secrets = secrets;
    for (std::size_t k = 0; k < p.k_total; ++k) {
      gf::Matrix forms(0, p.n_files * parts_, p.q);
      for (std::size_t n = 0; n < p.n_files; ++n)
        for (std::size_t i = 0; i < rows_; ++i)
          forms.append_row(tensor_form(detail::unit(p.n_files, n), blocks_[k].row(i), p.q));
      UserCache cache;
      cache.secret = secrets.at(k);
      for (std::size_t i = 0; i < forms.rows(); ++i) cache.packets.push_back(apply_form(forms.row(i), lib, parts_));
      out.caches.push_back(std::move(cache));
      out.forms.push_back(std::move(forms));
    }
    return out;
  }

  Transcript deliver(const Placement&, const FileLibrary& lib, const DemandVector& d) const override {
    check_library(lib);
    const auto& p = params_;
    const auto vectors = decoding_vectors(d.active);
    gf::Matrix rows = demand_matrix(d.demands, p.n_files, p.q);
    Transcript x;
    x.side.active = d.active;
    x.side.demands = d.demands;
    x.side.leaders = leader_set(rows, d.active);
    multicast::Plan plan(d.active, p.t, rows, x.side.leaders);
    multicast::emit(plan, block_form(*vectors), lib, parts_, x);
    return x;
  }

  SymbolVector decode(std::size_t v, const UserCache& cache, const Transcript& x, std::size_t demand) const override {
    const auto& p = params_;
    const gf::Field f(p.q);
    const auto vectors = decoding_vectors(x.side.active);
    gf::Matrix rows = demand_matrix(x.side.demands, p.n_files, p.q);
    multicast::Plan plan(x.side.active, p.t, rows, x.side.leaders);
    DemandVector d{x.side.active, x.side.demands};

    // p_W F_{d_j} for W ∋ v, through p_W = λᵀE_v.
    auto interference = [&](std::size_t j, const Subset& w) {
      auto lam = gf::row_combination(blocks_[v], vectors->at(w));
      if (!lam) fail(Errc::decoding_vector_not_found, "decoding vector outside the receiver's span");
      SymbolVector acc(width(), 0);
      const std::size_t dj = d.demand_of(j);
      for (std::size_t i = 0; i < rows_; ++i) detail::axpy(f, acc, (*lam)[i], cache.packets.at(dj * rows_ + i));
      return acc;
    };

    gf::Matrix system = blocks_[v];
    std::vector<SymbolVector> values;
    for (std::size_t i = 0; i < rows_; ++i) values.push_back(cache.packets.at(demand * rows_ + i));
    for (const auto& w : subsets_of(without(x.side.active, v), p.t)) {
      system.append_row(vectors->at(w));
      values.push_back(multicast::extract(plan, x, 0, with(w, v), v, width(), interference));
    }
    return detail::solve_from_rows(system, values, parts_);
  }

  std::vector<MdsUse> mds_matrices() const override { return {{name() + ".E", e_, parts_, true}}; }

 private:
  using Vectors = std::map<Subset, std::vector<Sym>>;

  // One vector per W ∈ Ω^t_I; the first basis vector of the intersection
  // unless some [E_j; P_j] is then rank deficient, in which case seeded
  // combinations of the basis are tried.
  std::shared_ptr<const Vectors> decoding_vectors(const Subset& active) const {
    {
      std::lock_guard lock(mu_);
      if (auto it = memo_.find(active); it != memo_.end()) return it->second;
    }
    const auto& p = params_;
    const gf::Field f(p.q);
    std::map<Subset, gf::Matrix> spaces;
    bool has_choice = false;
    for (const auto& w : subsets_of(active, p.t)) {
      std::vector<gf::Matrix> null_blocks;
      gf::Matrix stacked(0, parts_, p.q);
      for (auto k : w) stacked = gf::vstack(stacked, annihilators_[k]);
      gf::Matrix basis = gf::nullspace(stacked);
      if (basis.rows() == 0) fail(Errc::decoding_vector_not_found, "empty span intersection");
      has_choice = has_choice || basis.rows() > 1;
      spaces.emplace(w, std::move(basis));
    }
    Rng rng(0x9e3779b97f4a7c15ULL ^ active.size());
    for (std::size_t attempt = 0; attempt < 64; ++attempt) {
      auto vectors = std::make_shared<Vectors>();
      for (const auto& [w, basis] : spaces) {
        if (attempt == 0) {
          vectors->emplace(w, basis.row_vector(0));
          continue;
        }
        std::vector<Sym> c(basis.rows());
        std::uniform_int_distribution<Sym> dist(0, p.q - 1);
        for (auto& x : c) x = dist(rng);
        vectors->emplace(w, gf::vec_mul(c, basis));
      }
      if (decodable(active, *vectors)) {
        std::lock_guard lock(mu_);
        memo_.emplace(active, vectors);
        return vectors;
      }
      if (!has_choice) break;
    }
    fail(Errc::decoding_vector_not_found, "no decoding vectors give full-rank [E_j; P_j] for this active set");
  }

  bool decodable(const Subset& active, const Vectors& vectors) const {
    for (auto j : active) {
      gf::Matrix m = blocks_[j];
      for (const auto& w : subsets_of(without(active, j), params_.t)) m.append_row(vectors.at(w));
      if (gf::rank(m) != parts_) return false;
    }
    return true;
  }

  multicast::BlockForm block_form(const Vectors& vectors) const {
    return [this, &vectors](std::span<const Sym> row, const Subset& w) {
      return tensor_form(row, vectors.at(w), params_.q);
    };
  }

  bool ht3_;
  std::size_t rows_ = 0;
  std::size_t parts_ = 0;
  gf::Matrix e_;
  std::vector<gf::Matrix> blocks_;
  std::vector<gf::Matrix> annihilators_;
  mutable std::mutex mu_;
  mutable std::map<Subset, std::shared_ptr<const Vectors>> memo_;
};

}  // namespace

std::unique_ptr<Scheme> make_flex(const SystemParams& p) { return std::make_unique<Flex>(p, false); }

std::unique_ptr<Scheme> make_ht3(const SystemParams& p) {
  if (p.k_active < 3) fail(Errc::unsupported_params, "ht3 needs K' >= 3");
  SystemParams q = p;
  q.t = p.k_active - 1;
  q.l_t = p.k_active;
  return std::make_unique<Flex>(q, true);
}

}  // namespace hotplug
