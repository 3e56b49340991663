#include "w2het/rng.hpp"

#include "w2het/stats.hpp"

namespace w2het {

std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(root);
  for (std::uint64_t word : path) {
    h = mix64(h ^ mix64(word));
  }
  return h;
}

double Rng::normal() { return normal_quantile(uniform()); }

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Rng::index: n must be positive");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t threshold = (0ULL - bound) % bound;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return static_cast<std::size_t>(r % bound);
  }
}

}  // namespace w2het
