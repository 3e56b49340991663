#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace w2het {

// SplitMix64 finalizer. Used to derive child seeds from a root seed and a
// stream path so parallel replications get distinct, reproducible streams.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path);

// Deterministic generator: std::mt19937_64 with uniforms built directly from
// the 64-bit output stream and normals drawn by inverse CDF. Both are fully
// specified here, so streams are bit-identical across platforms and standard
// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform on the open interval (0, 1) with 53-bit resolution
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal();  // standard normal via normal_quantile(uniform())

  double normal(double mean, double sd) { return mean + sd * normal(); }

  // uniform on {0, ..., n-1} without modulo bias
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace w2het
