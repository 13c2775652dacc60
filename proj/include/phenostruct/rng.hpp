#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace pstruct {

// Deterministic random stream. mt19937_64 has a standard-mandated output
// sequence and doubles are mapped manually, so the same (seed, name) pair
// yields the same draws on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for one named check under a global suite seed.
  static Rng for_check(std::uint64_t seed, std::string_view check_name) {
    return Rng(splitmix(seed ^ fnv1a(check_name)));
  }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0,1), 53-bit resolution.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Inclusive bounds.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Rng fork() { return Rng(splitmix(next())); }

  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return h;
  }

  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace pstruct
