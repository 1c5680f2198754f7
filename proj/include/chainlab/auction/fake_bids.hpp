#pragma once

#include <cstdint>
#include <vector>

#include "chainlab/crypto/bigint.hpp"
#include "chainlab/crypto/commitment.hpp"
#include "chainlab/crypto/hash.hpp"

namespace chainlab::auction {

/// rand(rho, n): SHA-256 over (rho, n) read as a big-endian integer.
crypto::BigInt rand_value(const crypto::Digest& rho, const crypto::Nonce& nonce);

/// (rand(rho, n) mod m) + 1.
std::int64_t compute_fake_bid(const crypto::Digest& rho, const crypto::Nonce& nonce, std::int64_t m);

/// `count` distinct indices in [0, n), drawn by rejection sampling on
/// hash(rho, counter) mod n. Throws ChainError(TooFewBidders) when count > n.
std::vector<std::size_t> select_fake_bidders(const crypto::Digest& rho, std::size_t count, std::size_t n);

}  // namespace chainlab::auction
