#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qfs {

// Base class for every validation failure raised by this library. Messages
// carry a concrete witness (element ids, point ids, residuals) where one exists.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Deterministic, platform-independent generator. std:: distributions are not
// guaranteed to produce identical streams across standard library versions,
// so every sampling helper here is implemented directly on splitmix64 output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of mantissa.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Rejection keeps the draw exactly uniform.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }

  int index(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  // Standard normal via Box-Muller on the portable uniform stream.
  double normal();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qfs
