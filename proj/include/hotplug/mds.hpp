#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hotplug/gf.hpp"

namespace hotplug::mds {

struct MdsSpec {
  std::size_t info_len;
  std::size_t code_len;
  std::uint32_t q;
};

// code_len × info_len; row ℓ evaluates the monomials at node ℓ+1.
gf::Matrix vandermonde(const MdsSpec& spec);
// [1, x, x², …] of length info_len.
std::vector<gf::Sym> vandermonde_row(std::size_t info_len, std::uint64_t node, std::uint32_t q);

struct MdsCheck {
  bool ok = true;
  std::vector<std::size_t> witness;  // a dependent row set when !ok
  std::uint64_t checked = 0;
};

inline constexpr std::uint64_t assert_mds_limit = 1'000'000;

// Every k-row submatrix of g must have rank k.
MdsCheck assert_mds(const gf::Matrix& g, std::size_t k);

}  // namespace hotplug::mds
