#include "hotplug/verify.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "hotplug/errors.hpp"
#include "hotplug/mds.hpp"
#include "hotplug/multicast.hpp"
#include "scheme_util.hpp"

namespace hotplug::verify {

namespace {

// Calls f(demands) for every vector in [N]^len, in lexicographic order.
template <class F>
void for_each_demand(std::size_t len, std::size_t n_files, F&& f) {
  std::vector<std::size_t> d(len, 0);
  while (true) {
    f(d);
    std::size_t i = len;
    while (i > 0 && d[i - 1] + 1 == n_files) d[--i] = 0;
    if (i == 0) return;
    ++d[i - 1];
  }
}

template <class F>
void for_each_tuple(std::size_t len, std::size_t base, F&& f) {
  for_each_demand(len, base, std::forward<F>(f));
}

std::string subset_text(const Subset& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i] + 1;
  os << '}';
  return os.str();
}

std::size_t cache_symbols(const UserCache& c) {
  std::size_t n = 0;
  for (const auto& p : c.packets) n += p.size();
  return n;
}

}  // namespace

CorrectnessResult verify_correctness(const Scheme& scheme, const FileLibrary& lib, const CorrectnessOptions& opts) {
  const auto& p = scheme.params();
  const std::size_t sets = detail::binom_z(p.k_total, p.k_active);
  std::size_t per_set = 1;
  for (std::size_t i = 0; i < p.k_active; ++i) {
    per_set *= p.n_files;
    if (per_set > max_decode_cells) break;
  }
  if (per_set > max_decode_cells || sets * per_set * opts.key_draws > max_decode_cells)
    fail(Errc::guard_rail, "decode enumeration exceeds " + std::to_string(max_decode_cells) + " cells");

  CorrectnessResult out;
  const auto b = static_cast<std::int64_t>(lib.length());
  std::size_t max_cache = 0;
  std::size_t max_payload = 0;
  Rng rng(opts.seed);
  const auto active_sets = subsets(p.k_total, p.k_active);

  for (std::size_t draw = 0; draw < opts.key_draws; ++draw) {
    const auto secrets = sample_secrets(scheme, rng);
    Placement placement = scheme.place(lib, secrets);
    if (opts.sabotage && !placement.caches.empty() && !placement.caches[0].packets.empty() &&
        !placement.caches[0].packets[0].empty()) {
      auto& s = placement.caches[0].packets[0][0];
      s = (s + 1) % p.q;
    }
    for (const auto& c : placement.caches) max_cache = std::max(max_cache, cache_symbols(c));

    for (const auto& active : active_sets) {
      for_each_demand(p.k_active, p.n_files, [&](const std::vector<std::size_t>& dem) {
        DemandVector d{active, dem};
        ++out.cells;
        Transcript x = scheme.deliver(placement, lib, d);
        const std::size_t load = x.payload_symbols();
        if (load > max_payload) {
          max_payload = load;
          out.argmax_cells.clear();
        }
        if (load == max_payload && out.argmax_cells.size() < 64) out.argmax_cells.push_back(d.describe());
        if (x.omitted_forms.rows() > 0) {
          ++out.transcripts_with_omissions;
          if (!multicast::omission_sound(x)) {
            out.omission_ok = false;
            if (out.counterexample.empty()) out.counterexample = "omitted message outside the sent span at " + d.describe();
          }
        }
        for (std::size_t i = 0; i < active.size(); ++i) {
          const std::size_t user = active[i];
          std::string why;
          try {
            auto got = scheme.decode(user, placement.caches.at(user), x, dem[i]);
            auto want = lib.file(dem[i]);
            if (!std::equal(got.begin(), got.end(), want.begin(), want.end())) why = "wrong file";
          } catch (const Error& e) {
            why = e.what();
          }
          if (!why.empty()) {
            out.ok = false;
            if (out.counterexample.empty())
              out.counterexample = "user " + std::to_string(user + 1) + " at " + d.describe() + ": " + why;
          }
        }
      });
    }
  }
  out.measured_m = make_rational(static_cast<std::int64_t>(max_cache), b);
  out.measured_r = make_rational(static_cast<std::int64_t>(max_payload), b);
  return out;
}

PrivacyResult verify_privacy(const Scheme& scheme, const std::vector<FileLibrary>& libs) {
  const auto& p = scheme.params();
  PrivacyResult out;
  const auto space = scheme.secret_space();
  const auto active_sets = subsets(p.k_total, p.k_active);

  // Secrets of offline users never enter X or Z_B, so they stay at the
  // first value of the space.
  double cells = static_cast<double>(active_sets.size()) * static_cast<double>(libs.size());
  for (std::size_t i = 0; i < p.k_active; ++i) cells *= static_cast<double>(space.size() * p.n_files);
  if (cells > static_cast<double>(max_privacy_cells)) {
    out.ok = false;
    out.enumerable = false;
    std::ostringstream os;
    os << "privacy enumeration needs " << cells << " cells, limit " << max_privacy_cells;
    out.reason = os.str();
    return out;
  }

  for (std::size_t li = 0; li < libs.size(); ++li) {
    const auto& lib = libs[li];
    for (const auto& active : active_sets) {
      // One record per (secrets of I, d_I), all equally likely.
      struct Record {
        std::size_t tuple;  // index into cache_text
        std::vector<std::size_t> demands;
        std::size_t observable;  // id of X
      };
      std::vector<Record> records;
      std::map<std::string, std::size_t> observables;
      std::vector<std::vector<std::string>> cache_text;  // per secret tuple, per slot

      std::vector<UserSecret> secrets(p.k_total, space.front());
      for_each_tuple(p.k_active, space.size(), [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i = 0; i < active.size(); ++i) secrets[active[i]] = space[idx[i]];
        const Placement placement = scheme.place(lib, secrets);
        std::vector<std::string> texts;
        for (auto user : active) {
          std::ostringstream os;
          const auto& c = placement.caches[user];
          for (const auto& pk : c.packets) {
            for (auto s : pk) os << s << ',';
            os << ';';
          }
          os << "k:";
          for (auto s : c.secret.key) os << s << ',';
          os << "tau:" << c.secret.tau;
          texts.push_back(os.str());
        }
        const std::size_t tuple_id = cache_text.size();
        cache_text.push_back(std::move(texts));
        for_each_demand(p.k_active, p.n_files, [&](const std::vector<std::size_t>& dem) {
          Transcript x = scheme.deliver(placement, lib, DemandVector{active, dem});
          auto it = observables.emplace(x.observable(), observables.size()).first;
          records.push_back({tuple_id, dem, it->second});
          ++out.cells;
        });
      });

      // Offline secrets must not reach X: rerun the first key tuple with them
      // moved to the last value of the space.
      if (space.size() > 1 && active.size() < p.k_total) {
        std::vector<UserSecret> base(p.k_total, space.front()), moved(p.k_total, space.back());
        for (auto user : active) base[user] = moved[user] = space.front();
        const Placement pa = scheme.place(lib, base);
        const Placement pb = scheme.place(lib, moved);
        for_each_demand(p.k_active, p.n_files, [&](const std::vector<std::size_t>& dem) {
          const DemandVector d{active, dem};
          if (scheme.deliver(pa, lib, d).observable() != scheme.deliver(pb, lib, d).observable() && out.ok) {
            out.ok = false;
            out.counterexample = "offline secrets change X at " + d.describe();
          }
        });
      }

      // Every nonempty proper B ⊂ I.
      const std::size_t ka = active.size();
      for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << ka); ++mask) {
        std::map<std::string, std::uint64_t> joint, view_count, other_count;
        for (const auto& r : records) {
          std::ostringstream view, other;
          view << r.observable << '|';
          for (std::size_t i = 0; i < ka; ++i) {
            if (mask >> i & 1)
              view << r.demands[i] << ':' << cache_text[r.tuple][i] << '|';
            else
              other << r.demands[i] << ',';
          }
          const std::string v = view.str(), o = other.str();
          ++joint[v + "#" + o];
          ++view_count[v];
          ++other_count[o];
        }
        const auto total = static_cast<std::uint64_t>(records.size());
        bool independent = true;
        double mi = 0;
        for (const auto& [v, cv] : view_count) {
          for (const auto& [o, co] : other_count) {
            auto it = joint.find(v + "#" + o);
            const std::uint64_t cvo = it == joint.end() ? 0 : it->second;
            if (cvo * total != cv * co) independent = false;
            if (cvo > 0)
              mi += static_cast<double>(cvo) / static_cast<double>(total) *
                    std::log2(static_cast<double>(cvo) * static_cast<double>(total) /
                              (static_cast<double>(cv) * static_cast<double>(co)));
          }
        }
        out.max_mi_bits = std::max(out.max_mi_bits, mi);
        if (!independent) {
          out.ok = false;
          if (out.counterexample.empty()) {
            Subset b;
            for (std::size_t i = 0; i < ka; ++i)
              if (mask >> i & 1) b.push_back(active[i]);
            out.counterexample = "I=" + subset_text(active) + " B=" + subset_text(b) + " library=" + std::to_string(li);
          }
        }
      }
    }
  }
  return out;
}

SideInfoResult verify_side_info_size(const std::string& scheme_name, const SystemParams& params, std::uint64_t seed) {
  SideInfoResult out;
  SystemParams p1 = params, p2 = params;
  p2.b_factor = 2 * params.b_factor;
  auto s1 = make_scheme(scheme_name, p1);
  auto s2 = make_scheme(scheme_name, p2);
  const auto lib1 = FileLibrary::random(p1.n_files, s1->file_length(), p1.q, seed);
  const auto lib2 = FileLibrary::random(p2.n_files, s2->file_length(), p2.q, seed);
  Rng rng1(seed), rng2(seed);
  const auto sec1 = sample_secrets(*s1, rng1);
  const auto sec2 = sample_secrets(*s2, rng2);
  const auto pl1 = s1->place(lib1, sec1);
  const auto pl2 = s2->place(lib2, sec2);

  const auto active_sets = subsets(p1.k_total, p1.k_active);
  for (std::size_t a = 0; a < active_sets.size() && a < 4; ++a) {
    std::size_t n = 0;
    for_each_demand(p1.k_active, p1.n_files, [&](const std::vector<std::size_t>& dem) {
      if (n++ >= 16) return;
      const DemandVector d{active_sets[a], dem};
      const auto x1 = s1->deliver(pl1, lib1, d);
      const auto x2 = s2->deliver(pl2, lib2, d);
      ++out.cells;
      const auto side1 = x1.side.serialize().size(), side2 = x2.side.serialize().size();
      if (x2.payload_symbols() != 2 * x1.payload_symbols() || side1 != side2) {
        if (out.ok) {
          std::ostringstream os;
          os << d.describe() << ": payload " << x1.payload_symbols() << " -> " << x2.payload_symbols()
             << ", side info bytes " << side1 << " -> " << side2;
          out.detail = os.str();
        }
        out.ok = false;
      }
    });
  }
  return out;
}

MdsResult verify_mds(const Scheme& scheme) {
  MdsResult out;
  for (const auto& use : scheme.mds_matrices()) {
    const auto count = binom(static_cast<std::int64_t>(use.matrix.rows()), static_cast<std::int64_t>(use.k));
    if (count <= BigInt(mds::assert_mds_limit)) {
      const auto check = mds::assert_mds(use.matrix, use.k);
      out.checked.push_back(use.name + ": brute force over " + std::to_string(check.checked) + " subsets");
      if (!check.ok) {
        out.ok = false;
        if (out.witness.empty()) out.witness = use.name + " rows " + subset_text(check.witness);
      }
    } else if (use.vandermonde && use.matrix.modulus() > use.matrix.rows() && use.matrix.cols() == use.k) {
      out.checked.push_back(use.name + ": vandermonde with " + std::to_string(use.matrix.rows()) + " distinct nodes");
    } else {
      out.ok = false;
      if (out.witness.empty()) out.witness = use.name + ": too large to enumerate and not structurally certified";
    }
  }
  return out;
}

int Report::exit_code() const {
  if (!correctness.ok || !correctness.omission_ok) return exit_decode;
  if (privacy && !privacy->ok) return exit_privacy;
  if (!accounting_ok || !mds.ok) return exit_accounting;
  return exit_pass;
}

nlohmann::json rational_json(const Rational& r) {
  return {{"num", numerator(r).str()}, {"den", denominator(r).str()},
          {"value", hotplug::to_string(r)}, {"float", to_double(r)}};
}

nlohmann::json params_json(const SystemParams& p) {
  nlohmann::json j = {{"k_active", p.k_active}, {"k_total", p.k_total}, {"n_files", p.n_files},
                      {"t", p.t},               {"q", p.q},             {"b_factor", p.b_factor}};
  if (p.l_t) j["l_t"] = *p.l_t;
  return j;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["scheme"] = scheme;
  j["params"] = params_json(params);
  j["decode_ok"] = correctness.ok;
  j["counterexample"] = correctness.counterexample.empty() ? nlohmann::json() : nlohmann::json(correctness.counterexample);
  j["cells"] = correctness.cells;
  j["measured_M"] = rational_json(correctness.measured_m);
  j["measured_R"] = rational_json(correctness.measured_r);
  j["declared_M"] = rational_json(declared.m);
  j["declared_R"] = rational_json(declared.r);
  j["argmax_cells"] = correctness.argmax_cells;
  j["accounting_ok"] = accounting_ok;
  j["omission_ok"] = correctness.omission_ok;
  j["transcripts_with_omissions"] = correctness.transcripts_with_omissions;
  j["mds_ok"] = mds.ok;
  j["mds_checked"] = mds.checked;
  if (!mds.witness.empty()) j["mds_witness"] = mds.witness;
  if (privacy) {
    nlohmann::json pj = {{"privacy_ok", privacy->ok},
                         {"enumerable", privacy->enumerable},
                         {"cells", privacy->cells},
                         {"max_mi_bits", privacy->max_mi_bits}};
    if (!privacy->reason.empty()) pj["reason"] = privacy->reason;
    if (!privacy->counterexample.empty()) pj["counterexample"] = privacy->counterexample;
    j["privacy"] = pj;
  }
  j["exit_code"] = exit_code();
  return j;
}

}  // namespace hotplug::verify
