#pragma once

#include <array>
#include <cstdint>

namespace nmrq {

// Philox4x32-10 counter-based generator (Salmon et al.). Chosen because the
// shot-sampling contract needs streams that are reproducible per
// (seed, time point, run) and independent of evaluation order; a counter
// generator gives that without carrying mutable engine state between points.
class Philox {
 public:
  explicit Philox(std::uint64_t key, std::uint64_t stream = 0)
      : key0_(static_cast<std::uint32_t>(key)),
        key1_(static_cast<std::uint32_t>(key >> 32)),
        ctr_{0, 0, static_cast<std::uint32_t>(stream),
             static_cast<std::uint32_t>(stream >> 32)} {}

  std::uint32_t next_u32() {
    if (idx_ == 4) {
      block_ = bump();
      idx_ = 0;
    }
    return block_[idx_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) via rejection-free 64x64 multiply-shift.
  std::uint64_t next_below(std::uint64_t bound) {
    const unsigned __int128 m =
        static_cast<unsigned __int128>(next_u64()) * bound;
    return static_cast<std::uint64_t>(m >> 64);
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

 private:
  static std::uint32_t mulhi(std::uint32_t a, std::uint32_t b) {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a) * b) >> 32);
  }

  std::array<std::uint32_t, 4> bump() {
    std::array<std::uint32_t, 4> c = ctr_;
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      const std::uint32_t lo0 = kMul0 * c[0];
      const std::uint32_t hi0 = mulhi(kMul0, c[0]);
      const std::uint32_t lo1 = kMul1 * c[2];
      const std::uint32_t hi1 = mulhi(kMul1, c[2]);
      c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    if (++ctr_[0] == 0 && ++ctr_[1] == 0) ++ctr_[2];
    return c;
  }

  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  std::uint32_t key0_, key1_;
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 4> block_{};
  int idx_ = 4;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Per-(time point, run) sampling key: hash chain over the base seed so
// evaluation order cannot matter.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t time_index,
                              std::uint64_t run_index) {
  return splitmix64(splitmix64(splitmix64(base) ^ time_index) ^ run_index);
}

}  // namespace nmrq
