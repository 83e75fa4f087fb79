#pragma once

#include <memory>

#include "hotplug/scheme.hpp"

namespace hotplug {

std::unique_ptr<Scheme> make_yma_plus(const SystemParams& p);
std::unique_ptr<Scheme> make_ht1(const SystemParams& p);
std::unique_ptr<Scheme> make_ht2(const SystemParams& p);
// General FLEX scheme; uses p.t and p.l_t (largest admissible value when unset).
std::unique_ptr<Scheme> make_flex(const SystemParams& p);
// FLEX at t = K′−1, L_t = K′.
std::unique_ptr<Scheme> make_ht3(const SystemParams& p);

// Largest L with L < C(K′−1,t−1)·t/(t−1).
std::size_t flex_max_subpacketization(std::size_t k_active, std::size_t t);

// Vectors in the intersection of the row spaces of `blocks`, computed from
// the stacked system [E₁ᵀ −E₂ᵀ 0 …; E₁ᵀ 0 −E₃ᵀ …] λ = 0.
gf::Matrix fat_intersection(const std::vector<gf::Matrix>& blocks);
// Same space, computed as the common annihilator of the blocks' nullspaces.
gf::Matrix annihilator_intersection(const std::vector<gf::Matrix>& blocks);

}  // namespace hotplug
