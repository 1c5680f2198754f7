#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chainlab/crypto/bigint.hpp"

namespace chainlab::crypto {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> bytes);

std::string to_hex(std::span<const std::uint8_t> bytes);

/// Big-endian interpretation of a digest.
BigInt to_bigint(const Digest& digest);

/// Minimal big-endian byte string of a non-negative integer (empty for zero).
std::vector<std::uint8_t> to_bytes(const BigInt& value);

/// Canonical, injective encoding of a field sequence. Every field is written
/// as a one-byte type tag, an 8-byte big-endian length and the payload, so
/// distinct tuples never share an encoding.
class HashWriter {
 public:
  HashWriter& add(std::span<const std::uint8_t> bytes);
  HashWriter& add(std::string_view text);
  HashWriter& add(std::int64_t value);
  HashWriter& add(std::uint64_t value);
  HashWriter& add(const BigInt& value);
  HashWriter& add(const Digest& value);

  const std::vector<std::uint8_t>& bytes() const { return buffer_; }
  Digest digest() const { return sha256(buffer_); }

 private:
  void field(std::uint8_t tag, std::span<const std::uint8_t> payload);

  std::vector<std::uint8_t> buffer_;
};

}  // namespace chainlab::crypto
