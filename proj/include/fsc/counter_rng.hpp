#pragma once

#include <array>
#include <cstdint>

namespace fsc {

/// Philox4x32-10 block function (Salmon et al., SC'11). Stateless: the output
/// is a pure function of (counter, key), so draws can be generated in any
/// order or on any thread.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr int kRounds = 10;

  static constexpr Counter block(Counter ctr, Key key) {
    for (int r = 0; r < kRounds; ++r) {
      if (r > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      ctr = round(ctr, key);
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static constexpr Counter round(const Counter& c, const Key& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

/// Standard normal draw keyed by (seed, trial, channel). Channels 2j and
/// 2j+1 are the two halves of one Box-Muller pair.
double keyed_gaussian(std::uint64_t seed, std::uint64_t trial, std::uint64_t channel);

/// Uniform draw in (0, 1] keyed by (seed, index, channel).
double keyed_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t channel);

/// Uniform draw in (0, 1] built from the top 53 bits of a 64-bit word.
constexpr double unit_interval(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

}  // namespace fsc
