#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "chainlab/crypto/bigint.hpp"
#include "chainlab/crypto/hash.hpp"

namespace chainlab::crypto {

/// SHA-256 counter-mode generator. Output depends only on (seed, stream
/// label), so independent harness components draw from disjoint, replayable
/// streams. Satisfies UniformRandomBitGenerator.
class DeterministicRng {
 public:
  using result_type = std::uint64_t;

  DeterministicRng(std::uint64_t seed, std::string_view stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();
  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  Digest next_digest();
  /// Uniform integer with at most `bits` bits.
  BigInt bits(unsigned bits);
  /// Uniform in [lo, hi].
  BigInt uniform(const BigInt& lo, const BigInt& hi);

  /// Child stream; does not advance this generator.
  DeterministicRng derive(std::string_view label) const;

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  explicit DeterministicRng(const Digest& key) : key_(key) {}
  void refill();

  Digest key_{};
  std::uint64_t counter_ = 0;
  Digest block_{};
  std::size_t used_ = block_.size();
};

}  // namespace chainlab::crypto
