#include "chainlab/blindvote/offchain.hpp"

#include "chainlab/blindvote/contract.hpp"

namespace chainlab::blindvote {

OffchainChannel::OffchainChannel(const simchain::Chain& chain, IdentityId contract, crypto::RsaKeyPair admin_key)
    : chain_(chain), contract_(contract), admin_key_(std::move(admin_key)) {}

void OffchainChannel::deliver(IdentityId voter, const crypto::BigInt& blinded, const crypto::Digest& sigma) {
  if (!chain_.identity_verify(voter, offchain_request_digest(contract_, blinded), sigma)) {
    throw simchain::ChainError(simchain::Error::BadAuthSignature);
  }
  ++messages_;
  Request request{blinded, sigma};
  auto [it, inserted] = sessions_.try_emplace(voter, Session{request, request, false});
  if (!inserted) it->second.latest = std::move(request);
}

std::optional<crypto::BigInt> OffchainChannel::return_signature(IdentityId voter) {
  auto it = sessions_.find(voter);
  if (it == sessions_.end() || refuse_all_) return std::nullopt;
  Session& s = it->second;
  if (s.latest.blinded != s.first.blinded) return std::nullopt;
  if (s.first.blinded >= admin_key_.modulus) return std::nullopt;
  ++messages_;
  s.signed_first = true;
  return crypto::sign(s.first.blinded, admin_key_);
}

std::optional<OffchainChannel::Request> OffchainChannel::evidence(IdentityId voter) const {
  auto it = sessions_.find(voter);
  if (it == sessions_.end()) return std::nullopt;
  return it->second.first;
}

bool OffchainChannel::double_demand(IdentityId voter) const {
  auto it = sessions_.find(voter);
  return it != sessions_.end() && it->second.signed_first && it->second.latest.blinded != it->second.first.blinded;
}

}  // namespace chainlab::blindvote
