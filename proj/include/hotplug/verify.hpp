#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hotplug/scheme.hpp"

namespace hotplug::verify {

inline constexpr std::size_t max_decode_cells = 1'000'000;
inline constexpr std::size_t max_privacy_cells = 10'000'000;

enum ExitCode : int { exit_pass = 0, exit_decode = 2, exit_privacy = 3, exit_accounting = 4 };

struct CorrectnessOptions {
  std::uint64_t seed = 1;
  // Independent secret draws, each with its own placement.
  std::size_t key_draws = 1;
  // Add 1 to the first cached symbol of user 0.
  bool sabotage = false;
};

struct CorrectnessResult {
  bool ok = true;
  std::string counterexample;
  std::size_t cells = 0;
  Rational measured_m;
  Rational measured_r;
  std::vector<std::string> argmax_cells;  // every cell attaining measured_r
  bool omission_ok = true;
  std::size_t transcripts_with_omissions = 0;
};

// Runs placement, then every active set and demand vector, decoding at every
// active user and comparing with the library.
CorrectnessResult verify_correctness(const Scheme& scheme, const FileLibrary& lib, const CorrectnessOptions& opts = {});

struct PrivacyResult {
  bool ok = true;
  bool enumerable = true;
  std::string reason;  // set when the enumeration was refused
  std::size_t cells = 0;
  double max_mi_bits = 0;
  // First dependent cell, e.g. "I={1,2} B={1} library=random".
  std::string counterexample;
};

// Exact check that d_{I\B} is independent of (X, d_B, Z_B) for every I and
// nonempty B ⊊ I, over uniform secrets and demands, for each library.
PrivacyResult verify_privacy(const Scheme& scheme, const std::vector<FileLibrary>& libs);

struct SideInfoResult {
  bool ok = true;
  std::string detail;
  std::size_t cells = 0;
};

// Runs the scheme at b_factor and 2·b_factor over a sample of cells.
SideInfoResult verify_side_info_size(const std::string& scheme_name, const SystemParams& params,
                                     std::uint64_t seed = 1);

struct MdsResult {
  bool ok = true;
  std::vector<std::string> checked;  // "name: brute force over N subsets" or "name: vandermonde"
  std::string witness;
};

// Brute force up to mds::assert_mds_limit subsets, structural above it.
MdsResult verify_mds(const Scheme& scheme);

struct Report {
  std::string scheme;
  SystemParams params;
  CorrectnessResult correctness;
  TradeoffPoint declared;
  std::optional<PrivacyResult> privacy;
  MdsResult mds;
  bool accounting_ok = true;

  int exit_code() const;
  nlohmann::json to_json() const;
};

nlohmann::json params_json(const SystemParams& p);
nlohmann::json rational_json(const Rational& r);

}  // namespace hotplug::verify
