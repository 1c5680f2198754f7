#include "chainlab/auction/fake_bids.hpp"

#include <algorithm>
#include <stdexcept>

#include "chainlab/simchain/error.hpp"

namespace chainlab::auction {

crypto::BigInt rand_value(const crypto::Digest& rho, const crypto::Nonce& nonce) {
  crypto::HashWriter w;
  w.add(std::string_view("chainlab.rand")).add(rho).add(nonce);
  return crypto::to_bigint(w.digest());
}

std::int64_t compute_fake_bid(const crypto::Digest& rho, const crypto::Nonce& nonce, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("fake bid needs m >= 1");
  const crypto::BigInt r = rand_value(rho, nonce) % m;
  return r.convert_to<std::int64_t>() + 1;
}

std::vector<std::size_t> select_fake_bidders(const crypto::Digest& rho, std::size_t count, std::size_t n) {
  if (count > n) throw simchain::ChainError(simchain::Error::TooFewBidders);
  std::vector<std::size_t> chosen;
  std::vector<bool> taken(n, false);
  for (std::uint64_t counter = 0; chosen.size() < count; ++counter) {
    crypto::HashWriter w;
    w.add(std::string_view("chainlab.fake-select")).add(rho).add(counter);
    const auto index = static_cast<std::size_t>((crypto::to_bigint(w.digest()) % n).convert_to<std::uint64_t>());
    if (taken[index]) continue;
    taken[index] = true;
    chosen.push_back(index);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace chainlab::auction
