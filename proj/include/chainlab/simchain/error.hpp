#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chainlab::simchain {

/// Rejection and penalty reasons recorded on transactions. One enum spans all
/// contracts so receipts stay comparable across protocols.
enum class Error {
  // chain
  InsufficientBalance,
  FutureBlock,
  UnknownFunction,
  UnknownContract,
  BadArguments,
  WindowClosed,
  NotConstructed,
  AlreadyConstructed,
  BadConfig,
  WrongDeposit,
  // voting
  NotAdmin,
  TooManyVoters,
  AlreadyApproved,
  AlreadyRegistered,
  KeyAlreadySet,
  NoAdminKey,
  NotVoter,
  AlreadyDelegated,
  NoDelegation,
  AlreadySigned,
  InvalidSignature,
  TooManyCommits,
  BadVoterKey,
  BadAdminSig,
  BadCommitment,
  BadSelfSig,
  Reuse,
  UnknownCommitment,
  AlreadyRevealed,
  BadOpening,
  NotEligible,
  AlreadyRefunded,
  NotCancelled,
  Cancelled,
  BadAuthSignature,
  WrongVariant,
  // auction
  DuplicateIdentity,
  NotRegistered,
  HashMismatch,
  Concluded,
  StaleInterval,
  AtLeaf,
  NoLeafYet,
  NothingToBlame,
  NothingToSettle,
  TooFewBidders,
  BadProof,
  NotFakeBidder,
  OverLeafWithoutCalls,
  AlreadyDisclosed,
  Disqualified,
  NotReady,
};

std::string_view to_string(Error error);

class ChainError : public std::runtime_error {
 public:
  explicit ChainError(Error code, const std::string& detail = {})
      : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)), code_(code) {}
  Error code() const noexcept { return code_; }

 private:
  Error code_;
};

}  // namespace chainlab::simchain
