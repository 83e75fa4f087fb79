#include "hotplug/scheme.hpp"

#include "hotplug/schemes_nonprivate.hpp"
#include "hotplug/schemes_private.hpp"
#include "scheme_util.hpp"

namespace hotplug {

void Scheme::check_library(const FileLibrary& lib) const {
  if (lib.n_files() != params_.n_files) fail(Errc::config, "library has the wrong number of files");
  if (lib.length() != file_length())
    fail(Errc::config, "file length " + std::to_string(lib.length()) + " differs from B = " +
                           std::to_string(file_length()));
  if (lib.modulus() != params_.q) fail(Errc::modulus_mismatch, "library field differs from the scheme field");
}

std::vector<UserSecret> sample_secrets(const Scheme& scheme, Rng& rng) {
  std::vector<UserSecret> out;
  for (std::size_t k = 0; k < scheme.params().k_total; ++k) out.push_back(scheme.sample_secret(rng));
  return out;
}

std::vector<UserSecret> default_secrets(const Scheme& scheme) {
  return std::vector<UserSecret>(scheme.params().k_total, scheme.secret_space().front());
}

const std::vector<SchemeEntry>& registered_schemes() {
  static const std::vector<SchemeEntry> entries = {
      {"yma_plus", false, true, "MAN placement over all K users, YMA delivery, offline users mimic the first leader"},
      {"ht1", false, true, "MDS-coded MAN placement, multicast over the active set"},
      {"ht2", false, false, "MDS-coded placement of the file sum, M = 1/K'"},
      {"ht3", false, false, "per-user MDS blocks, single multicast, t = K'-1"},
      {"flex", false, true, "per-user MDS blocks with decoding vectors, t in [2, K'-1]"},
      {"pk_plus", true, true, "MAN placement with privacy keys over all K users"},
      {"ht1_pk", true, true, "HT1 with privacy keys"},
      {"ht3_pk", true, false, "HT3 with privacy keys"},
      {"ht_vu", true, false, "direct virtual-user MDS construction, M = 1/(K'(N-1)+1)"},
      {"vu(ht1)", true, true, "virtual users over HT1"},
      {"vu(ht2)", true, false, "virtual users over HT2"},
      {"vu(ht3)", true, false, "virtual users over HT3"},
  };
  return entries;
}

namespace {

bool is_vu(const std::string& name, std::string& inner) {
  if (name.size() > 4 && name.rfind("vu(", 0) == 0 && name.back() == ')') {
    inner = name.substr(3, name.size() - 4);
    return true;
  }
  return false;
}

}  // namespace

std::unique_ptr<Scheme> make_scheme(const std::string& name, const SystemParams& params) {
  params.validate();
  std::string inner;
  if (is_vu(name, inner)) return make_vu(inner, params);
  if (name == "yma_plus") return make_yma_plus(params);
  if (name == "ht1") return make_ht1(params);
  if (name == "ht2") return make_ht2(params);
  if (name == "ht3") return make_ht3(params);
  if (name == "flex") return make_flex(params);
  if (name == "pk_plus") return make_pk_plus(params);
  if (name == "ht1_pk") return make_ht1_pk(params);
  if (name == "ht3_pk") return make_ht3_pk(params);
  if (name == "ht_vu") return make_ht_vu(params);
  fail(Errc::unsupported_params, "unknown scheme '" + name + "'");
}

bool scheme_uses_t(const std::string& name) {
  std::string inner;
  if (is_vu(name, inner)) return scheme_uses_t(inner);
  for (const auto& e : registered_schemes())
    if (e.name == name) return e.uses_t;
  return false;
}

std::vector<std::size_t> valid_t(const std::string& name, const SystemParams& params) {
  std::string inner;
  const std::size_t ka = params.k_active;
  std::vector<std::size_t> out;
  auto range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t t = lo; t <= hi; ++t) out.push_back(t);
  };
  if (is_vu(name, inner)) {
    SystemParams p = params;
    p.k_active *= params.n_files;
    p.k_total *= params.n_files;
    return valid_t(inner, p);
  }
  if (name == "yma_plus" || name == "pk_plus") range(0, params.k_total);
  else if (name == "ht1" || name == "ht1_pk") range(0, ka);
  else if (name == "flex") {
    if (ka >= 3) range(2, ka - 1);
  } else out.push_back(0);
  return out;
}

namespace detail {

SymbolVector invert_system(const gf::Matrix& a, const std::vector<SymbolVector>& y) {
  const gf::Field f = a.field();
  gf::Matrix inv = gf::inverse(a);
  const std::size_t parts = a.rows();
  const std::size_t b = y.empty() ? 0 : y.front().size();
  SymbolVector file(parts * b, 0);
  for (std::size_t l = 0; l < parts; ++l) {
    for (std::size_t i = 0; i < parts; ++i) {
      const Sym c = inv(l, i);
      if (c == 0) continue;
      for (std::size_t s = 0; s < b; ++s) file[l * b + s] = f.add(file[l * b + s], f.mul(c, y[i][s]));
    }
  }
  return file;
}

SymbolVector solve_from_rows(const gf::Matrix& rows, const std::vector<SymbolVector>& y, std::size_t parts) {
  gf::RowSpace span(rows.cols(), rows.modulus());
  std::vector<std::size_t> pick;
  for (std::size_t r = 0; r < rows.rows() && pick.size() < parts; ++r)
    if (span.insert(rows.row(r))) pick.push_back(r);
  if (pick.size() < parts)
    fail(Errc::decode_failure, "collected " + std::to_string(pick.size()) + " independent symbols, need " +
                                   std::to_string(parts));
  std::vector<SymbolVector> sel;
  for (auto r : pick) sel.push_back(y[r]);
  return invert_system(rows.select_rows(pick), sel);
}

std::vector<Subset> demand_classes(const DemandVector& d, std::size_t n_files) {
  std::vector<Subset> classes(n_files);
  for (std::size_t i = 0; i < d.active.size(); ++i) classes.at(d.demands[i]).push_back(d.active[i]);
  return classes;
}

}  // namespace detail

}  // namespace hotplug
