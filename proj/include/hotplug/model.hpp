#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hotplug/combinatorics.hpp"
#include "hotplug/gf.hpp"
#include "hotplug/rational.hpp"

namespace hotplug {

using gf::Sym;
using SymbolVector = std::vector<Sym>;
using Rng = std::mt19937_64;

// Users and files are 0-based internally; text output is 1-based.
struct SystemParams {
  std::size_t k_active = 1;  // K′
  std::size_t k_total = 1;   // K
  std::size_t n_files = 1;   // N
  std::size_t t = 0;
  std::uint32_t q = 2;
  std::size_t b_factor = 1;  // symbols per subfile, B = L·b_factor
  std::optional<std::size_t> l_t;  // FLEX subpacketization override

  void validate() const;
  std::string describe() const;
};

class FileLibrary {
 public:
  FileLibrary(std::size_t n_files, std::size_t length, std::uint32_t q);

  static FileLibrary random(std::size_t n_files, std::size_t length, std::uint32_t q, std::uint64_t seed);
  // Every file equal to the first one.
  static FileLibrary repeated(std::size_t n_files, std::size_t length, std::uint32_t q, std::uint64_t seed);

  std::size_t n_files() const noexcept { return files_.size(); }
  std::size_t length() const noexcept { return length_; }
  std::uint32_t modulus() const noexcept { return q_; }
  std::span<const Sym> file(std::size_t n) const { return files_.at(n); }
  SymbolVector& file_mut(std::size_t n) { return files_.at(n); }

  // Symbols of subfile ℓ when every file is split into `parts` equal pieces.
  std::span<const Sym> subfile(std::size_t n, std::size_t l, std::size_t parts) const;

 private:
  std::size_t length_;
  std::uint32_t q_;
  std::vector<SymbolVector> files_;
};

// A linear form over the N·L subfile coordinates; coordinate n·L+ℓ is F_{n,ℓ}.
using LinearForm = std::vector<Sym>;

LinearForm tensor_form(std::span<const Sym> file_coeffs, std::span<const Sym> subfile_coeffs, std::uint32_t q);
// Evaluates the form symbol-wise on the library split into L parts.
SymbolVector apply_form(std::span<const Sym> form, const FileLibrary& lib, std::size_t parts);

struct DemandVector {
  Subset active;                     // I, sorted
  std::vector<std::size_t> demands;  // d_k for the k-th member of I

  std::size_t demand_of(std::size_t user) const;
  std::size_t slot_of(std::size_t user) const { return position(active, user); }
  std::string describe() const;
};

struct UserSecret {
  std::vector<Sym> key;  // p_k for the PK family
  std::size_t tau = 0;   // τ_k for virtual-user schemes
  bool operator==(const UserSecret&) const = default;
};

struct UserCache {
  std::vector<SymbolVector> packets;
  UserSecret secret;  // stored alongside the packets; size independent of B
};

struct Placement {
  std::vector<UserCache> caches;
  std::vector<UserSecret> secrets;
  // Linear form of every cached packet, one matrix per user. Server-side only.
  std::vector<gf::Matrix> forms;
  // Placement of a wrapped inner scheme over virtual users.
  std::shared_ptr<const Placement> inner;
};

struct SideInfo {
  Subset active;
  Subset leaders;
  std::vector<std::size_t> demands;  // sent in clear by the non-private schemes
  std::optional<gf::Matrix> queries;
  std::vector<std::size_t> offsets;
  std::vector<SideInfo> nested;  // side information of a wrapped inner scheme

  std::string serialize() const;
};

struct Message {
  std::string label;
  SymbolVector symbols;
};

struct Transcript {
  std::vector<Message> payload;
  SideInfo side;

  // Not transmitted: linear forms of the sent and of the omitted multicast
  // messages, kept for the omission soundness check.
  gf::Matrix sent_forms;
  gf::Matrix omitted_forms;

  std::size_t payload_symbols() const;
  // Canonical encoding of everything a receiver observes.
  std::string observable() const;
};

struct TradeoffPoint {
  Rational m;
  Rational r;
  bool operator==(const TradeoffPoint&) const = default;
};

struct TradeoffCurve {
  std::string name;
  std::vector<TradeoffPoint> points;  // sorted by m
  bool envelope = false;
};

// Greedy scan in row order, keeping a row iff it increases the rank.
// Returns positions into `rows`.
std::vector<std::size_t> leader_rows(const gf::Matrix& rows);
// Same rule, reported as user ids taken from `active`.
Subset leader_set(const gf::Matrix& rows, const Subset& active);

gf::Matrix demand_matrix(const std::vector<std::size_t>& demands, std::size_t n_files, std::uint32_t q);

}  // namespace hotplug
