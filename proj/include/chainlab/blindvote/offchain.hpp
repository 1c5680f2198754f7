#pragma once

#include <map>
#include <optional>
#include <utility>

#include "chainlab/crypto/rsa.hpp"
#include "chainlab/simchain/chain.hpp"

namespace chainlab::blindvote {

using simchain::IdentityId;

/// Authenticated voter-to-admin channel replacing on-chain Steps 3 and 4.
/// Nothing sent here appears on chain.
class OffchainChannel {
 public:
  struct Request {
    crypto::BigInt blinded;
    crypto::Digest sigma{};
  };

  OffchainChannel(const simchain::Chain& chain, IdentityId contract, crypto::RsaKeyPair admin_key);

  /// Voter sends h'_i with its identity signature. Throws
  /// ChainError(BadAuthSignature).
  void deliver(IdentityId voter, const crypto::BigInt& blinded, const crypto::Digest& sigma);

  /// Admin answers the voter's latest request. Only the first request of each
  /// voter is ever signed; a later, different request gets nullopt.
  std::optional<crypto::BigInt> return_signature(IdentityId voter);

  /// First authenticated request, the evidence for an on-chain report.
  std::optional<Request> evidence(IdentityId voter) const;
  /// Latest request differs from the signed one.
  bool double_demand(IdentityId voter) const;

  void set_refuse_all(bool refuse) { refuse_all_ = refuse; }
  std::size_t messages() const { return messages_; }

 private:
  struct Session {
    Request first;
    Request latest;
    bool signed_first = false;
  };

  const simchain::Chain& chain_;
  IdentityId contract_;
  crypto::RsaKeyPair admin_key_;
  std::map<IdentityId, Session> sessions_;
  bool refuse_all_ = false;
  std::size_t messages_ = 0;
};

}  // namespace chainlab::blindvote
