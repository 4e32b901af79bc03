#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace crisispulse {

// Deterministic random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the derived draws below avoid
// std::uniform_*_distribution on purpose, since those are implementation
// defined and would break cross-platform reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Unbiased-enough bounded draw (Lemire multiply-shift, bias < 2^-32 here).
  std::uint32_t below(std::uint32_t n) {
    const std::uint64_t x = gen_();
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(x) * n) >> 64);
  }

  // Uniform in [0, 1) with 53 random mantissa bits.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = below(static_cast<std::uint32_t>(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace crisispulse
