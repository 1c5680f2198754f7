#include "chainlab/crypto/rng.hpp"

#include <stdexcept>

namespace chainlab::crypto {

DeterministicRng::DeterministicRng(std::uint64_t seed, std::string_view stream)
    : key_(HashWriter{}.add(std::string_view{"chainlab.rng"}).add(seed).add(stream).digest()) {}

void DeterministicRng::refill() {
  block_ = HashWriter{}.add(key_).add(counter_++).digest();
  used_ = 0;
}

std::uint64_t DeterministicRng::next_u64() {
  if (used_ + 8 > block_.size()) refill();
  std::uint64_t value = 0;
  for (int i = 0; i < 8; ++i) value = (value << 8) | block_[used_++];
  return value;
}

std::uint64_t DeterministicRng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("DeterministicRng::below: zero bound");
  const std::uint64_t limit = max() - max() % bound;
  for (;;) {
    const std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

std::int64_t DeterministicRng::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("DeterministicRng::uniform: empty range");
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == max()) return static_cast<std::int64_t>(next_u64());
  return lo + static_cast<std::int64_t>(below(span + 1));
}

Digest DeterministicRng::next_digest() {
  Digest out{};
  for (std::size_t i = 0; i < out.size(); i += 8) {
    std::uint64_t v = next_u64();
    for (int j = 7; j >= 0; --j, v >>= 8) out[i + j] = static_cast<std::uint8_t>(v);
  }
  return out;
}

BigInt DeterministicRng::bits(unsigned n) {
  BigInt value = 0;
  unsigned filled = 0;
  while (filled < n) {
    value <<= 64;
    value |= next_u64();
    filled += 64;
  }
  if (filled > n) value >>= (filled - n);
  return value;
}

BigInt DeterministicRng::uniform(const BigInt& lo, const BigInt& hi) {
  if (lo > hi) throw std::invalid_argument("DeterministicRng::uniform: empty range");
  const BigInt span = hi - lo + 1;
  const unsigned width = static_cast<unsigned>(boost::multiprecision::msb(span)) + 1;
  for (;;) {
    BigInt candidate = bits(width);
    if (candidate < span) return lo + candidate;
  }
}

DeterministicRng DeterministicRng::derive(std::string_view label) const {
  return DeterministicRng(HashWriter{}.add(key_).add(label).digest());
}

}  // namespace chainlab::crypto
