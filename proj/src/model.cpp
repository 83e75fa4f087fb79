#include "hotplug/model.hpp"

#include <sstream>

#include "hotplug/errors.hpp"

namespace hotplug {

void SystemParams::validate() const {
  if (k_active < 1 || k_active > k_total)
    fail(Errc::unsupported_params, "need 1 <= K' <= K, got K'=" + std::to_string(k_active) +
                                       " K=" + std::to_string(k_total));
  if (n_files < 1) fail(Errc::unsupported_params, "need N >= 1");
  if (b_factor < 1) fail(Errc::unsupported_params, "b-factor must be positive");
  gf::Field f(q);
}

std::string SystemParams::describe() const {
  std::ostringstream os;
  os << "(K'=" << k_active << ", K=" << k_total << ", N=" << n_files << ", t=" << t << ", q=" << q;
  if (l_t) os << ", L_t=" << *l_t;
  os << ", b=" << b_factor << ")";
  return os.str();
}

FileLibrary::FileLibrary(std::size_t n_files, std::size_t length, std::uint32_t q)
    : length_(length), q_(gf::Field(q).q()), files_(n_files, SymbolVector(length, 0)) {}

FileLibrary FileLibrary::random(std::size_t n_files, std::size_t length, std::uint32_t q, std::uint64_t seed) {
  FileLibrary lib(n_files, length, q);
  Rng rng(seed);
  std::uniform_int_distribution<Sym> dist(0, q - 1);
  for (auto& f : lib.files_)
    for (auto& s : f) s = dist(rng);
  return lib;
}

FileLibrary FileLibrary::repeated(std::size_t n_files, std::size_t length, std::uint32_t q, std::uint64_t seed) {
  FileLibrary lib = random(n_files, length, q, seed);
  for (auto& f : lib.files_) f = lib.files_.front();
  return lib;
}

std::span<const Sym> FileLibrary::subfile(std::size_t n, std::size_t l, std::size_t parts) const {
  if (parts == 0 || length_ % parts != 0)
    fail(Errc::config, "file length " + std::to_string(length_) + " not divisible into " + std::to_string(parts));
  const std::size_t b = length_ / parts;
  return file(n).subspan(l * b, b);
}

LinearForm tensor_form(std::span<const Sym> file_coeffs, std::span<const Sym> subfile_coeffs, std::uint32_t q) {
  gf::Field f(q);
  LinearForm form(file_coeffs.size() * subfile_coeffs.size(), 0);
  for (std::size_t n = 0; n < file_coeffs.size(); ++n) {
    if (file_coeffs[n] == 0) continue;
    for (std::size_t l = 0; l < subfile_coeffs.size(); ++l)
      form[n * subfile_coeffs.size() + l] = f.mul(file_coeffs[n], subfile_coeffs[l]);
  }
  return form;
}

SymbolVector apply_form(std::span<const Sym> form, const FileLibrary& lib, std::size_t parts) {
  if (form.size() != lib.n_files() * parts) fail(Errc::config, "linear form has the wrong length");
  const std::size_t b = lib.length() / parts;
  std::vector<std::uint64_t> acc(b, 0);
  for (std::size_t n = 0; n < lib.n_files(); ++n) {
    for (std::size_t l = 0; l < parts; ++l) {
      const Sym c = form[n * parts + l];
      if (c == 0) continue;
      auto sub = lib.subfile(n, l, parts);
      for (std::size_t s = 0; s < b; ++s) acc[s] += std::uint64_t{c} * sub[s];
    }
  }
  SymbolVector out(b);
  for (std::size_t s = 0; s < b; ++s) out[s] = static_cast<Sym>(acc[s] % lib.modulus());
  return out;
}

std::size_t DemandVector::demand_of(std::size_t user) const { return demands.at(slot_of(user)); }

std::string DemandVector::describe() const {
  std::ostringstream os;
  os << "I={";
  for (std::size_t i = 0; i < active.size(); ++i) os << (i ? "," : "") << active[i] + 1;
  os << "} d=(";
  for (std::size_t i = 0; i < demands.size(); ++i) os << (i ? "," : "") << demands[i] + 1;
  os << ")";
  return os.str();
}

namespace {

void put_list(std::ostringstream& os, char tag, const std::vector<std::size_t>& v) {
  os << tag << '=';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ';';
}

}  // namespace

std::string SideInfo::serialize() const {
  std::ostringstream os;
  put_list(os, 'I', active);
  put_list(os, 'L', leaders);
  put_list(os, 'D', demands);
  if (queries) {
    os << "Q=" << queries->rows() << 'x' << queries->cols() << ':';
    for (std::size_t i = 0; i < queries->data().size(); ++i) os << (i ? "," : "") << queries->data()[i];
    os << ';';
  }
  put_list(os, 'O', offsets);
  for (const auto& inner : nested) os << '[' << inner.serialize() << ']';
  return os.str();
}

std::size_t Transcript::payload_symbols() const {
  std::size_t n = 0;
  for (const auto& m : payload) n += m.symbols.size();
  return n;
}

std::string Transcript::observable() const {
  std::ostringstream os;
  os << side.serialize() << '|';
  for (const auto& m : payload) {
    os << m.label << ':';
    for (auto s : m.symbols) os << s << ',';
    os << ';';
  }
  return os.str();
}

std::vector<std::size_t> leader_rows(const gf::Matrix& rows) {
  gf::RowSpace span(rows.cols(), rows.modulus());
  std::vector<std::size_t> picked;
  for (std::size_t r = 0; r < rows.rows(); ++r)
    if (span.insert(rows.row(r))) picked.push_back(r);
  return picked;
}

Subset leader_set(const gf::Matrix& rows, const Subset& active) {
  if (rows.rows() != active.size()) fail(Errc::config, "leader_set: one row per active user expected");
  Subset out;
  for (auto r : leader_rows(rows)) out.push_back(active[r]);
  return out;
}

gf::Matrix demand_matrix(const std::vector<std::size_t>& demands, std::size_t n_files, std::uint32_t q) {
  gf::Matrix d(demands.size(), n_files, q);
  for (std::size_t i = 0; i < demands.size(); ++i) d(i, demands[i]) = 1;
  return d;
}

}  // namespace hotplug
