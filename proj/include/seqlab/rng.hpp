#pragma once

#include <array>
#include <cstdint>

namespace seqlab {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// Stateless: every output block is a pure function of (key, counter).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// Address of one random draw: (seed, trial, chain, lane).
struct DrawIndex {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::uint32_t chain = 0;
  std::uint32_t lane = 0;
};

inline std::uint64_t bits64(const DrawIndex& idx) noexcept {
  const Philox4x32::Counter ctr = {static_cast<std::uint32_t>(idx.trial),
                                   static_cast<std::uint32_t>(idx.trial >> 32), idx.chain,
                                   idx.lane};
  const Philox4x32::Key key = {static_cast<std::uint32_t>(idx.seed),
                               static_cast<std::uint32_t>(idx.seed >> 32)};
  const auto out = Philox4x32::block(ctr, key);
  return (std::uint64_t{out[0]} << 32) | out[1];
}

/// Uniform on the open interval (0, 1); never returns 0 or 1.
inline double openUniform(const DrawIndex& idx) noexcept {
  return (static_cast<double>(bits64(idx) >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace seqlab
