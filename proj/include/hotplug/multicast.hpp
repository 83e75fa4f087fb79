#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "hotplug/model.hpp"

namespace hotplug::multicast {

// B_{k,W}: linear form of the block user k decodes from X_{W∪{k}}, given k's
// demand (or query) row. Must be linear in the row.
using BlockForm = std::function<LinearForm(std::span<const Sym> row, const Subset& w)>;
// Value of B_{j,W} as computed by a receiving user from its own cache.
using Interference = std::function<SymbolVector(std::size_t j, const Subset& w)>;

// Signals X_S = Σ_{k∈S} (−1)^{pos_S(k)} B_{k,S∖k} for S ∈ Ω^{t+1}_ground, of
// which only those meeting the leader set are transmitted.
class Plan {
 public:
  Plan(Subset ground, std::size_t t, gf::Matrix rows, Subset leaders);

  const Subset& ground() const noexcept { return ground_; }
  std::size_t t() const noexcept { return t_; }
  const Subset& leaders() const noexcept { return leaders_; }
  const std::vector<Subset>& sent() const noexcept { return sent_; }
  const std::vector<Subset>& omitted() const noexcept { return omitted_; }
  std::span<const Sym> row_of(std::size_t user) const { return rows_.row(position(ground_, user)); }
  std::uint32_t modulus() const noexcept { return rows_.modulus(); }

  Sym sign(const Subset& s, std::size_t k) const;
  std::optional<std::size_t> sent_index(const Subset& s) const;

  // X_A = Σ c·X_{sent[i]} for an omitted A.
  std::vector<std::pair<std::size_t, Sym>> reconstruction(const Subset& a) const;

  LinearForm message_form(const Subset& s, const BlockForm& block) const;

 private:
  Subset ground_;
  std::size_t t_;
  gf::Matrix rows_;
  Subset leaders_;
  std::vector<Subset> sent_;
  std::vector<Subset> omitted_;
  std::map<Subset, std::size_t> sent_index_;
  gf::Matrix beta_;  // ground user × leader coordinates
};

// Appends the sent messages to `out` (labelled "X{…}") and records sent and
// omitted forms for the soundness check.
void emit(const Plan& plan, const BlockForm& block, const FileLibrary& lib, std::size_t parts, Transcript& out);

// X_S as seen by a receiver: the transmitted value or its reconstruction.
// Sent messages occupy payload[first .. first + plan.sent().size()).
// `width` is the number of symbols per subfile.
SymbolVector message_value(const Plan& plan, const Transcript& x, std::size_t first, const Subset& s,
                           std::size_t width);

// B_{v,S∖v} recovered by user v ∈ S.
SymbolVector extract(const Plan& plan, const Transcript& x, std::size_t first, const Subset& s, std::size_t v,
                     std::size_t width, const Interference& interference);

// Every omitted form lies in the span of the sent ones.
bool omission_sound(const Transcript& x);

}  // namespace hotplug::multicast
