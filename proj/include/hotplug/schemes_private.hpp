#pragma once

#include <memory>
#include <string>

#include "hotplug/scheme.hpp"

namespace hotplug {

std::unique_ptr<Scheme> make_pk_plus(const SystemParams& p);
std::unique_ptr<Scheme> make_ht1_pk(const SystemParams& p);
std::unique_ptr<Scheme> make_ht3_pk(const SystemParams& p);
std::unique_ptr<Scheme> make_ht_vu(const SystemParams& p);
// Runs `inner` at (NK′, NK, N). With pad=false every τ is fixed to the first
// virtual user, which leaks demands; used as a negative control.
std::unique_ptr<Scheme> make_vu(const std::string& inner, const SystemParams& p, bool pad = true);

// Entries sum to q−1.
std::vector<std::vector<Sym>> key_space(std::size_t n_files, std::uint32_t q);
std::vector<Sym> sample_key(std::size_t n_files, std::uint32_t q, Rng& rng);
std::vector<Sym> query_vector(std::span<const Sym> key, std::size_t demand, std::uint32_t q);

// (ℓ − s) mod N: the cyclic shift Ψ applied s times to (0, …, N−1).
std::size_t shifted_identity(std::size_t s, std::size_t l, std::size_t n);

}  // namespace hotplug
