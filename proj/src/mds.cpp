#include "hotplug/mds.hpp"

#include <string>

#include "hotplug/combinatorics.hpp"
#include "hotplug/errors.hpp"
#include "hotplug/rational.hpp"

namespace hotplug::mds {

std::vector<gf::Sym> vandermonde_row(std::size_t info_len, std::uint64_t node, std::uint32_t q) {
  gf::Field f(q);
  std::vector<gf::Sym> row(info_len);
  gf::Sym x = static_cast<gf::Sym>(node % q);
  gf::Sym p = 1 % q;
  for (auto& v : row) {
    v = p;
    p = f.mul(p, x);
  }
  return row;
}

gf::Matrix vandermonde(const MdsSpec& spec) {
  if (spec.info_len > spec.code_len)
    fail(Errc::config, "info_len " + std::to_string(spec.info_len) + " exceeds code_len " +
                           std::to_string(spec.code_len));
  if (spec.q <= spec.code_len)
    fail(Errc::field_too_small, "q=" + std::to_string(spec.q) + " cannot host " + std::to_string(spec.code_len) +
                                    " distinct nonzero nodes");
  gf::Matrix g(0, spec.info_len, spec.q);
  for (std::size_t l = 0; l < spec.code_len; ++l) g.append_row(vandermonde_row(spec.info_len, l + 1, spec.q));
  if (spec.code_len == 0) g = gf::Matrix(0, spec.info_len, spec.q);
  return g;
}

MdsCheck assert_mds(const gf::Matrix& g, std::size_t k) {
  if (k > g.rows()) fail(Errc::config, "assert_mds: k exceeds row count");
  BigInt count = binom(static_cast<std::int64_t>(g.rows()), static_cast<std::int64_t>(k));
  if (count > assert_mds_limit)
    fail(Errc::guard_rail, "assert_mds would enumerate " + count.str() + " submatrices");
  MdsCheck result;
  for (const auto& rows : subsets(g.rows(), k)) {
    ++result.checked;
    if (gf::rank(g.select_rows(rows)) != k) {
      result.ok = false;
      result.witness = rows;
      return result;
    }
  }
  return result;
}

}  // namespace hotplug::mds
