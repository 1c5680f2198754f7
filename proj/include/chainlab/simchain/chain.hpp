#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "chainlab/crypto/hash.hpp"
#include "chainlab/simchain/contract.hpp"
#include "chainlab/simchain/cost_model.hpp"
#include "chainlab/simchain/types.hpp"

namespace chainlab::simchain {

struct ChainState {
  Height height = 0;
  std::map<IdentityId, Amount> ledger;
  std::vector<Transaction> log;
  std::map<Height, crypto::Digest> beacon;
  /// Total currency ever minted.
  Amount minted = 0;
  /// Attached values of queued transactions.
  Amount escrowed = 0;
};

struct ChainOptions {
  std::uint64_t seed = 0;
  ChargePolicy charge_policy = ChargePolicy::ColdWarm;
  /// Currency per gas unit charged to senders; 0 keeps gas a pure report.
  Amount gas_price = 0;
};

class Chain {
 public:
  explicit Chain(ChainOptions options = {});
  Chain(const Chain&) = delete;
  Chain& operator=(const Chain&) = delete;

  const ChainOptions& options() const { return options_; }
  Height height() const { return state_.height; }
  const ChainState& state() const { return state_; }

  IdentityId create_identity(std::optional<PrincipalId> owner = std::nullopt, bool pseudonym = false,
                             std::string label = {});
  const Identity& identity(IdentityId id) const;
  const std::vector<Identity>& identities() const { return identities_; }
  IdentityId fee_sink() const { return fee_sink_; }
  IdentityId burn_sink() const { return burn_sink_; }

  void mint(IdentityId to, Amount amount);
  Amount balance(IdentityId id) const;
  /// Ledger plus escrow; equals minted() whenever conservation holds.
  Amount total_supply() const;
  Amount minted() const { return state_.minted; }

  /// Runs the constructor at the current height. Throws ChainError on
  /// InsufficientBalance; contract constructors throw their own errors.
  IdentityId deploy(IdentityId sender, std::unique_ptr<Contract> contract, CostModel costs, Amount attached_value);

  /// Queues a call for the next block. Throws ChainError(InsufficientBalance,
  /// UnknownContract, UnknownFunction).
  Transaction submit(IdentityId sender, IdentityId contract, Call call, Amount attached_value = 0);
  std::span<const Transaction> pending() const { return mempool_; }

  /// Executes the queued transactions as block height+1; returns them.
  std::vector<Transaction> advance_block();
  void advance_to(Height target);

  /// Throws ChainError(FutureBlock).
  const crypto::Digest& beacon_output(Height h) const;

  Contract& contract(IdentityId id);
  const Contract& contract(IdentityId id) const;
  template <class T>
  T& contract_as(IdentityId id) {
    return dynamic_cast<T&>(contract(id));
  }
  template <class T>
  const T& contract_as(IdentityId id) const {
    return dynamic_cast<const T&>(contract(id));
  }

  /// Simulated signature of an identity over a message digest.
  crypto::Digest identity_sign(IdentityId signer, const crypto::Digest& message) const;
  bool identity_verify(IdentityId signer, const crypto::Digest& message, const crypto::Digest& signature) const;

  /// Hash over height, ledger, log, beacon and all contract state.
  crypto::Digest state_digest() const;

 private:
  struct Installed {
    std::unique_ptr<Contract> contract;
    CostModel costs;
  };

  Installed& installed(IdentityId id);
  void execute(Transaction& tx);
  void record_beacon(Height h);

  ChainOptions options_;
  ChainState state_;
  std::vector<Identity> identities_;
  std::map<IdentityId, Installed> contracts_;
  std::vector<Transaction> mempool_;
  GasMeter meter_;
  std::uint64_t next_seq_ = 1;
  IdentityId fee_sink_;
  IdentityId burn_sink_;
};

}  // namespace chainlab::simchain
