#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hotplug {

// Subsets are sorted vectors of 0-based element ids.
using Subset = std::vector<std::size_t>;

// All size-k subsets of {0..n-1} in lexicographic order.
std::vector<Subset> subsets(std::size_t n, std::size_t k);
// All size-k subsets of an arbitrary sorted ground set, lexicographic in the ground order.
std::vector<Subset> subsets_of(const Subset& ground, std::size_t k);

// Position of `s` in subsets(n, s.size()); inverse of subsets(n,k)[index].
std::size_t subset_index(std::size_t n, const Subset& s);
Subset subset_at(std::size_t n, std::size_t k, std::size_t index);

bool contains(const Subset& s, std::size_t x);
Subset without(const Subset& s, std::size_t x);
Subset with(const Subset& s, std::size_t x);
bool intersects(const Subset& a, const Subset& b);
// Position of x inside the sorted subset s.
std::size_t position(const Subset& s, std::size_t x);

}  // namespace hotplug
