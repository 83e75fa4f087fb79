#include "hotplug/multicast.hpp"

#include <sstream>

#include "hotplug/errors.hpp"

namespace hotplug::multicast {

namespace {

std::string label_of(const Subset& s) {
  std::ostringstream os;
  os << "X{";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i] + 1;
  os << "}";
  return os.str();
}

}  // namespace

Plan::Plan(Subset ground, std::size_t t, gf::Matrix rows, Subset leaders)
    : ground_(std::move(ground)), t_(t), rows_(std::move(rows)), leaders_(std::move(leaders)) {
  if (rows_.rows() != ground_.size()) fail(Errc::config, "multicast plan: one row per ground user expected");
  for (auto l : leaders_)
    if (!contains(ground_, l)) fail(Errc::config, "leader outside the ground set");
  for (auto& s : subsets_of(ground_, t_ + 1)) {
    if (intersects(s, leaders_)) {
      sent_index_.emplace(s, sent_.size());
      sent_.push_back(std::move(s));
    } else {
      omitted_.push_back(std::move(s));
    }
  }
  // Coordinates of every ground row on the leader rows.
  gf::Matrix lead(0, rows_.cols(), rows_.modulus());
  for (auto l : leaders_) lead.append_row(row_of(l));
  beta_ = gf::Matrix(ground_.size(), leaders_.size(), rows_.modulus());
  for (std::size_t i = 0; i < ground_.size(); ++i) {
    if (leaders_.empty()) {
      for (auto v : rows_.row(i))
        if (v) fail(Errc::reconstruction_failure, "nonzero row with an empty leader set");
      continue;
    }
    auto c = gf::row_combination(lead, rows_.row(i));
    if (!c) fail(Errc::reconstruction_failure, "leader rows do not span the row of user " + std::to_string(ground_[i] + 1));
    std::copy(c->begin(), c->end(), beta_.row(i).begin());
  }
}

Sym Plan::sign(const Subset& s, std::size_t k) const {
  return position(s, k) % 2 == 0 ? 1 : modulus() - 1;
}

std::optional<std::size_t> Plan::sent_index(const Subset& s) const {
  auto it = sent_index_.find(s);
  if (it == sent_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<std::size_t, Sym>> Plan::reconstruction(const Subset& a) const {
  // Apply the weighted boundary operators of all leaders to A ∪ L. Because
  // these operators anticommute and square to zero, the resulting chain pairs
  // to zero against the message vector; A is the only term without a leader.
  const gf::Field f(modulus());
  Subset b = a;
  for (auto l : leaders_) b = with(b, l);
  std::map<Subset, Sym> chain{{b, 1}};
  for (std::size_t li = 0; li < leaders_.size(); ++li) {
    std::map<Subset, Sym> next;
    for (const auto& [c, coeff] : chain) {
      for (std::size_t p = 0; p < c.size(); ++p) {
        const Sym w = beta_(position(ground_, c[p]), li);
        if (w == 0) continue;
        Sym term = f.mul(coeff, w);
        if (p % 2) term = f.neg(term);
        auto& slot = next[without(c, c[p])];
        slot = f.add(slot, term);
      }
    }
    chain.clear();
    for (auto& [s, v] : next)
      if (v) chain.emplace(s, v);
  }
  auto self = chain.find(a);
  if (self == chain.end()) fail(Errc::reconstruction_failure, "omitted message has no reconstruction");
  const Sym scale = f.neg(f.inv(self->second));
  std::vector<std::pair<std::size_t, Sym>> out;
  for (const auto& [s, v] : chain) {
    if (s == a) continue;
    auto idx = sent_index(s);
    if (!idx) fail(Errc::reconstruction_failure, "reconstruction refers to an unsent message");
    out.emplace_back(*idx, f.mul(scale, v));
  }
  return out;
}

LinearForm Plan::message_form(const Subset& s, const BlockForm& block) const {
  const gf::Field f(modulus());
  LinearForm form;
  for (auto k : s) {
    LinearForm b = block(row_of(k), without(s, k));
    if (form.empty()) form.assign(b.size(), 0);
    const Sym sg = sign(s, k);
    for (std::size_t i = 0; i < b.size(); ++i) form[i] = f.add(form[i], f.mul(sg, b[i]));
  }
  return form;
}

void emit(const Plan& plan, const BlockForm& block, const FileLibrary& lib, std::size_t parts, Transcript& out) {
  const std::size_t width = lib.n_files() * parts;
  if (out.sent_forms.cols() != width) out.sent_forms = gf::Matrix(0, width, lib.modulus());
  if (out.omitted_forms.cols() != width) out.omitted_forms = gf::Matrix(0, width, lib.modulus());
  for (const auto& s : plan.sent()) {
    LinearForm form = plan.message_form(s, block);
    out.payload.push_back({label_of(s), apply_form(form, lib, parts)});
    out.sent_forms.append_row(form);
  }
  for (const auto& s : plan.omitted()) out.omitted_forms.append_row(plan.message_form(s, block));
}

SymbolVector message_value(const Plan& plan, const Transcript& x, std::size_t first, const Subset& s,
                           std::size_t width) {
  if (auto idx = plan.sent_index(s)) return x.payload.at(first + *idx).symbols;
  const gf::Field f(plan.modulus());
  SymbolVector value(width, 0);
  for (const auto& [idx, c] : plan.reconstruction(s)) {
    const auto& m = x.payload.at(first + idx).symbols;
    for (std::size_t i = 0; i < m.size(); ++i) value[i] = f.add(value[i], f.mul(c, m[i]));
  }
  return value;
}

SymbolVector extract(const Plan& plan, const Transcript& x, std::size_t first, const Subset& s, std::size_t v,
                     std::size_t width, const Interference& interference) {
  const gf::Field f(plan.modulus());
  SymbolVector value = message_value(plan, x, first, s, width);
  for (auto j : s) {
    if (j == v) continue;
    SymbolVector known = interference(j, without(s, j));
    const Sym sg = plan.sign(s, j);
    for (std::size_t i = 0; i < known.size(); ++i) value[i] = f.sub(value[i], f.mul(sg, known[i]));
  }
  const Sym inv = f.inv(plan.sign(s, v));
  for (auto& e : value) e = f.mul(inv, e);
  return value;
}

bool omission_sound(const Transcript& x) {
  if (x.omitted_forms.rows() == 0) return true;
  gf::RowSpace span(x.sent_forms.cols(), x.sent_forms.modulus());
  for (std::size_t r = 0; r < x.sent_forms.rows(); ++r) span.insert(x.sent_forms.row(r));
  for (std::size_t r = 0; r < x.omitted_forms.rows(); ++r)
    if (!span.contains(x.omitted_forms.row(r))) return false;
  return true;
}

}  // namespace hotplug::multicast
