#include "hotplug/errors.hpp"
#include "hotplug/schemes_private.hpp"

namespace hotplug {

std::vector<std::vector<Sym>> key_space(std::size_t n_files, std::uint32_t q) {
  const gf::Field f(q);
  std::vector<std::vector<Sym>> out;
  std::vector<Sym> head(n_files - 1, 0);
  while (true) {
    Sym sum = 0;
    for (auto v : head) sum = f.add(sum, v);
    std::vector<Sym> key = head;
    key.push_back(f.sub(q - 1, sum));
    out.push_back(std::move(key));
    std::size_t i = head.size();
    while (i > 0 && head[i - 1] == q - 1) head[--i] = 0;
    if (i == 0) break;
    ++head[i - 1];
  }
  return out;
}

std::vector<Sym> sample_key(std::size_t n_files, std::uint32_t q, Rng& rng) {
  const gf::Field f(q);
  std::uniform_int_distribution<Sym> dist(0, q - 1);
  std::vector<Sym> key(n_files);
  Sym sum = 0;
  for (std::size_t i = 0; i + 1 < n_files; ++i) {
    key[i] = dist(rng);
    sum = f.add(sum, key[i]);
  }
  key.back() = f.sub(q - 1, sum);
  return key;
}

std::vector<Sym> query_vector(std::span<const Sym> key, std::size_t demand, std::uint32_t q) {
  const gf::Field f(q);
  std::vector<Sym> out(key.begin(), key.end());
  out.at(demand) = f.add(out.at(demand), 1);
  return out;
}

std::size_t shifted_identity(std::size_t s, std::size_t l, std::size_t n) { return (l + n - s % n) % n; }

}  // namespace hotplug
