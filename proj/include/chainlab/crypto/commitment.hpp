#pragma once

#include <cstdint>
#include <string_view>

#include "chainlab/crypto/hash.hpp"

namespace chainlab::crypto {

using Nonce = Digest;

Digest commit_message(std::string_view message, const Nonce& nonce);
Digest commit_bid(std::int64_t bid, const Nonce& nonce);

bool commit_open(const Digest& commitment, std::string_view message, const Nonce& nonce);
bool commit_open_bid(const Digest& commitment, std::int64_t bid, const Nonce& nonce);

}  // namespace chainlab::crypto
