#include "hotplug/combinatorics.hpp"

#include <algorithm>

#include "hotplug/errors.hpp"
#include "hotplug/rational.hpp"

namespace hotplug {

std::vector<Subset> subsets(std::size_t n, std::size_t k) {
  std::vector<Subset> out;
  if (k > n) return out;
  Subset s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

std::vector<Subset> subsets_of(const Subset& ground, std::size_t k) {
  auto idx = subsets(ground.size(), k);
  for (auto& s : idx)
    for (auto& x : s) x = ground[x];
  return idx;
}

std::size_t subset_index(std::size_t n, const Subset& s) {
  // Count the subsets that precede s lexicographically.
  const std::size_t k = s.size();
  std::size_t index = 0;
  std::size_t prev = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (s[i] >= n || (i > 0 && s[i] <= s[i - 1])) fail(Errc::config, "subset is not sorted within ground set");
    for (std::size_t v = prev; v < s[i]; ++v) index += binom_u64(n - v - 1, k - i - 1);
    prev = s[i] + 1;
  }
  return index;
}

Subset subset_at(std::size_t n, std::size_t k, std::size_t index) {
  Subset s;
  std::size_t v = 0;
  for (std::size_t i = 0; i < k; ++i) {
    while (true) {
      std::size_t block = binom_u64(n - v - 1, k - i - 1);
      if (index < block) break;
      index -= block;
      ++v;
    }
    s.push_back(v++);
  }
  return s;
}

bool contains(const Subset& s, std::size_t x) { return std::binary_search(s.begin(), s.end(), x); }

Subset without(const Subset& s, std::size_t x) {
  Subset out;
  out.reserve(s.size());
  for (auto v : s)
    if (v != x) out.push_back(v);
  return out;
}

Subset with(const Subset& s, std::size_t x) {
  Subset out = s;
  out.insert(std::upper_bound(out.begin(), out.end(), x), x);
  return out;
}

bool intersects(const Subset& a, const Subset& b) {
  for (auto x : a)
    if (contains(b, x)) return true;
  return false;
}

std::size_t position(const Subset& s, std::size_t x) {
  auto it = std::lower_bound(s.begin(), s.end(), x);
  if (it == s.end() || *it != x) fail(Errc::config, "element not in subset");
  return static_cast<std::size_t>(it - s.begin());
}

}  // namespace hotplug
