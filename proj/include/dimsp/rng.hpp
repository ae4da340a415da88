#pragma once

#include <cassert>
#include <cstdint>
#include <utility>
#include <vector>

namespace dimsp {

/// Finalizing 64-bit mix (Stafford variant 13). Bijective, strong avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

/// Deterministic splittable random stream.
///
/// A stream is identified by a 64-bit key derived from (master seed, path of
/// split indices). Draw n of a stream is mix64(key + n * GAMMA) — the
/// splitmix64 output sequence with initial state `key`. Splitting derives a
/// child key from the parent key and the split index without consuming parent
/// state, so equal lineage always replays the identical sequence regardless
/// of draw interleaving elsewhere.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed)
      : key_(mix64(master_seed + kGamma)), master_seed_(master_seed) {}

  /// Child stream keyed by (this stream's lineage, index). Does not advance
  /// this stream.
  RngStream split(std::uint64_t index) const {
    RngStream child(*this);
    child.key_ = mix64(key_ ^ mix64((index + 1) * kGamma));
    child.counter_ = 0;
    child.lineage_.push_back(index);
    return child;
  }

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGamma); }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, n), unbiased via rejection.
  std::uint64_t next_below(std::uint64_t n) {
    assert(n > 0);
    const std::uint64_t reject_below = (0ULL - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = next_u64();
      if (x >= reject_below) return x % n;
    }
  }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    assert(lo <= hi);
    return lo + static_cast<std::int64_t>(
                    next_below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  std::uint64_t master_seed() const { return master_seed_; }
  const std::vector<std::uint64_t>& lineage() const { return lineage_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::uint64_t master_seed_;
  std::vector<std::uint64_t> lineage_;
};

/// In-place Fisher-Yates shuffle driven by an RngStream. Used instead of
/// std::shuffle so shuffles are bit-identical across standard libraries.
template <typename T>
void fisher_yates_shuffle(std::vector<T>& values, RngStream& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::swap(values[i - 1], values[rng.next_below(i)]);
  }
}

}  // namespace dimsp
