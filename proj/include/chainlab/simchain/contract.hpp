#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "chainlab/crypto/hash.hpp"
#include "chainlab/simchain/types.hpp"

namespace chainlab::simchain {

class Chain;

struct CallResult {
  TxStatus status = TxStatus::Accepted;
  std::optional<Error> error;
  std::string note;

  static CallResult ok(std::string note = {}) { return {TxStatus::Accepted, std::nullopt, std::move(note)}; }
  static CallResult reject(Error e, std::string note = {}) { return {TxStatus::Rejected, e, std::move(note)}; }
  /// Executed for its side effects (a penalty) but not valid as a statement.
  static CallResult penalize(Error e, std::string note = {}) { return {TxStatus::Penalized, e, std::move(note)}; }
};

struct Payment {
  IdentityId to;
  Amount amount = 0;
};

/// What a contract sees while executing one transaction. Payments are
/// buffered and only applied when the call is not rejected.
class CallContext {
 public:
  CallContext(const Chain& chain, const Transaction& tx, Amount contract_balance);

  IdentityId sender() const { return tx_.sender; }
  IdentityId self() const { return tx_.contract; }
  Amount value() const { return tx_.attached_value; }
  Height block() const { return tx_.block; }
  const Chain& chain() const { return chain_; }

  /// Funds the contract can still pay out in this call, including the attached value.
  Amount available() const { return balance_ + tx_.attached_value - committed_; }
  /// Throws std::logic_error when the contract would overdraw.
  void pay(IdentityId to, Amount amount);
  void burn(Amount amount);

  const std::vector<Payment>& payments() const { return payments_; }
  Amount burned() const { return burned_; }

 private:
  const Chain& chain_;
  const Transaction& tx_;
  Amount balance_;
  Amount committed_ = 0;
  Amount burned_ = 0;
  std::vector<Payment> payments_;
};

class Contract {
 public:
  virtual ~Contract() = default;

  /// Short name used to key the cost model and reports.
  virtual std::string_view kind() const = 0;
  /// Constructor hook; throws ChainError to abort the deployment.
  virtual void on_deploy(IdentityId self, IdentityId deployer, Amount attached, Height height) = 0;
  /// Must not mutate state when returning a rejection.
  virtual CallResult execute(CallContext& ctx, const Call& call) = 0;
  virtual void digest_into(crypto::HashWriter& w) const = 0;
};

}  // namespace chainlab::simchain
