#include "chainlab/crypto/commitment.hpp"

namespace chainlab::crypto {

Digest commit_message(std::string_view message, const Nonce& nonce) {
  return HashWriter{}.add(message).add(nonce).digest();
}

Digest commit_bid(std::int64_t bid, const Nonce& nonce) { return HashWriter{}.add(bid).add(nonce).digest(); }

bool commit_open(const Digest& commitment, std::string_view message, const Nonce& nonce) {
  return commit_message(message, nonce) == commitment;
}

bool commit_open_bid(const Digest& commitment, std::int64_t bid, const Nonce& nonce) {
  return commit_bid(bid, nonce) == commitment;
}

}  // namespace chainlab::crypto
