#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace s3vmr {

// Thin wrapper over std::mt19937 that only uses the raw 32-bit stream.
// std::uniform_* distributions are implementation-defined, so every draw
// here is derived from g() directly to keep outputs byte-identical across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint32_t seed) : g_(seed) {}

  std::uint32_t next_u32() { return g_(); }

  // Uniform in [0, n). n must be > 0. Modulo bias is irrelevant at the
  // scales used here (n << 2^32) and keeps the draw deterministic.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(g_()) % n; }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(g_()) * (1.0 / 4294967296.0); }

  bool chance(double p) { return unit() < p; }

  int range(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1)));
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {  // Fisher-Yates
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937 g_;
};

}  // namespace s3vmr
