#pragma once

#include <string>
#include <vector>

#include "hotplug/errors.hpp"
#include "hotplug/model.hpp"

namespace hotplug::detail {

inline std::size_t binom_z(std::size_t n, std::size_t k) {
  return static_cast<std::size_t>(binom_u64(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k)));
}
inline std::size_t binom_s(std::int64_t n, std::int64_t k) { return static_cast<std::size_t>(binom_u64(n, k)); }

// Index of W among the size-|W| subsets of [n] that contain k (lexicographic).
inline std::size_t index_containing(std::size_t n, std::size_t k, const Subset& w) {
  Subset rest;
  for (auto x : w)
    if (x != k) rest.push_back(x > k ? x - 1 : x);
  return subset_index(n - 1, rest);
}

// Index of W among the subsets of [n] that avoid k.
inline std::size_t index_avoiding(std::size_t n, std::size_t k, const Subset& w) {
  Subset rest;
  for (auto x : w) rest.push_back(x > k ? x - 1 : x);
  return subset_index(n - 1, rest);
}

inline std::vector<Sym> unit(std::size_t n, std::size_t i) {
  std::vector<Sym> e(n, 0);
  e[i] = 1;
  return e;
}

inline std::vector<Sym> ones(std::size_t n) { return std::vector<Sym>(n, 1); }

// acc += c·v
inline void axpy(const gf::Field& f, SymbolVector& acc, Sym c, std::span<const Sym> v) {
  if (acc.size() != v.size()) acc.resize(v.size(), 0);
  if (c == 0) return;
  for (std::size_t i = 0; i < v.size(); ++i) acc[i] = f.add(acc[i], f.mul(c, v[i]));
}

inline void sub_into(const gf::Field& f, SymbolVector& acc, std::span<const Sym> v) {
  for (std::size_t i = 0; i < v.size(); ++i) acc[i] = f.sub(acc[i], v[i]);
}

// Given invertible A (L×L) and values y_i = Σ_ℓ A[i,ℓ]·F_ℓ, returns F laid out subfile by subfile.
SymbolVector invert_system(const gf::Matrix& a, const std::vector<SymbolVector>& y);

// Picks the first rank-many independent rows of `rows` and solves for the file.
SymbolVector solve_from_rows(const gf::Matrix& rows, const std::vector<SymbolVector>& y, std::size_t parts);

inline void require(bool ok, Errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

std::vector<Subset> demand_classes(const DemandVector& d, std::size_t n_files);

}  // namespace hotplug::detail
