#include "chainlab/crypto/hash.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace chainlab::crypto {

Digest sha256(std::span<const std::uint8_t> bytes) {
  Digest out{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), out.data(), &length, EVP_sha256(), nullptr) != 1 ||
      length != out.size()) {
    throw std::runtime_error("sha256 failed");
  }
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

BigInt to_bigint(const Digest& digest) {
  BigInt value;
  boost::multiprecision::import_bits(value, digest.begin(), digest.end(), 8, true);
  return value;
}

std::vector<std::uint8_t> to_bytes(const BigInt& value) {
  if (value < 0) throw std::invalid_argument("to_bytes: negative integer");
  std::vector<std::uint8_t> out;
  if (value == 0) return out;
  boost::multiprecision::export_bits(value, std::back_inserter(out), 8, true);
  return out;
}

void HashWriter::field(std::uint8_t tag, std::span<const std::uint8_t> payload) {
  buffer_.push_back(tag);
  const std::uint64_t n = payload.size();
  for (int shift = 56; shift >= 0; shift -= 8) buffer_.push_back(static_cast<std::uint8_t>(n >> shift));
  buffer_.insert(buffer_.end(), payload.begin(), payload.end());
}

HashWriter& HashWriter::add(std::span<const std::uint8_t> bytes) {
  field(0x01, bytes);
  return *this;
}

HashWriter& HashWriter::add(std::string_view text) {
  field(0x02, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
  return *this;
}

HashWriter& HashWriter::add(std::int64_t value) {
  std::array<std::uint8_t, 8> raw{};
  auto u = static_cast<std::uint64_t>(value);
  for (int i = 7; i >= 0; --i, u >>= 8) raw[i] = static_cast<std::uint8_t>(u);
  field(0x03, raw);
  return *this;
}

HashWriter& HashWriter::add(std::uint64_t value) {
  std::array<std::uint8_t, 8> raw{};
  for (int i = 7; i >= 0; --i, value >>= 8) raw[i] = static_cast<std::uint8_t>(value);
  field(0x04, raw);
  return *this;
}

HashWriter& HashWriter::add(const BigInt& value) {
  field(0x05, to_bytes(value));
  return *this;
}

HashWriter& HashWriter::add(const Digest& value) {
  field(0x06, value);
  return *this;
}

}  // namespace chainlab::crypto
