#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "hpmsim/constants.hpp"

namespace hpmsim::rng {

/*!
 * Philox4x32-10 counter-based block function (Salmon et al., SC'11).
 *
 * Stateless: the 128-bit output is a pure function of (counter, key), so any
 * trial's random stream can be regenerated without replaying earlier ones.
 */
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) {
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

/*!
 * Sequential stream of variates for one (seed, stream_id) pair.
 *
 * Key = seed; counter = (block index, stream id). Each block yields two
 * 64-bit words. Streams for distinct ids never overlap for < 2^64 blocks.
 */
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream_id)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_lo_(static_cast<std::uint32_t>(stream_id)),
        stream_hi_(static_cast<std::uint32_t>(stream_id >> 32)) {}

  std::uint64_t next_u64() {
    if (cursor_ == 2) refill();
    return buffer_[cursor_++];
  }

  //! Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  //! Box-Muller, cosine branch only: always consumes exactly two uniforms.
  double normal(double mean, double sd) {
    const double u1 = uniform();
    const double u2 = uniform();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    return mean + sd * z;
  }

  double rayleigh(double sigma) { return sigma * std::sqrt(-2.0 * std::log(uniform())); }

  std::uint64_t blocks_consumed() const { return block_; }

 private:
  void refill() {
    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                                  stream_lo_, stream_hi_};
    const auto out = Philox4x32::block(ctr, key_);
    buffer_[0] = (std::uint64_t{out[1]} << 32) | out[0];
    buffer_[1] = (std::uint64_t{out[3]} << 32) | out[2];
    ++block_;
    cursor_ = 0;
  }

  Philox4x32::Key key_;
  std::uint32_t stream_lo_;
  std::uint32_t stream_hi_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int cursor_ = 2;
};

}  // namespace hpmsim::rng
