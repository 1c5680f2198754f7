#include "chainlab/simchain/error.hpp"

namespace chainlab::simchain {

std::string_view to_string(Error error) {
  switch (error) {
    case Error::InsufficientBalance:
      return "InsufficientBalance";
    case Error::FutureBlock:
      return "FutureBlock";
    case Error::UnknownFunction:
      return "UnknownFunction";
    case Error::UnknownContract:
      return "UnknownContract";
    case Error::BadArguments:
      return "BadArguments";
    case Error::WindowClosed:
      return "WindowClosed";
    case Error::NotConstructed:
      return "NotConstructed";
    case Error::AlreadyConstructed:
      return "AlreadyConstructed";
    case Error::BadConfig:
      return "BadConfig";
    case Error::WrongDeposit:
      return "WrongDeposit";
    case Error::NotAdmin:
      return "NotAdmin";
    case Error::TooManyVoters:
      return "TooManyVoters";
    case Error::AlreadyApproved:
      return "AlreadyApproved";
    case Error::AlreadyRegistered:
      return "AlreadyRegistered";
    case Error::KeyAlreadySet:
      return "KeyAlreadySet";
    case Error::NoAdminKey:
      return "NoAdminKey";
    case Error::NotVoter:
      return "NotVoter";
    case Error::AlreadyDelegated:
      return "AlreadyDelegated";
    case Error::NoDelegation:
      return "NoDelegation";
    case Error::AlreadySigned:
      return "AlreadySigned";
    case Error::InvalidSignature:
      return "InvalidSignature";
    case Error::TooManyCommits:
      return "TooManyCommits";
    case Error::BadVoterKey:
      return "BadVoterKey";
    case Error::BadAdminSig:
      return "BadAdminSig";
    case Error::BadCommitment:
      return "BadCommitment";
    case Error::BadSelfSig:
      return "BadSelfSig";
    case Error::Reuse:
      return "Reuse";
    case Error::UnknownCommitment:
      return "UnknownCommitment";
    case Error::AlreadyRevealed:
      return "AlreadyRevealed";
    case Error::BadOpening:
      return "BadOpening";
    case Error::NotEligible:
      return "NotEligible";
    case Error::AlreadyRefunded:
      return "AlreadyRefunded";
    case Error::NotCancelled:
      return "NotCancelled";
    case Error::Cancelled:
      return "Cancelled";
    case Error::BadAuthSignature:
      return "BadAuthSignature";
    case Error::WrongVariant:
      return "WrongVariant";
    case Error::DuplicateIdentity:
      return "DuplicateIdentity";
    case Error::NotRegistered:
      return "NotRegistered";
    case Error::HashMismatch:
      return "HashMismatch";
    case Error::Concluded:
      return "Concluded";
    case Error::StaleInterval:
      return "StaleInterval";
    case Error::AtLeaf:
      return "AtLeaf";
    case Error::NoLeafYet:
      return "NoLeafYet";
    case Error::NothingToBlame:
      return "NothingToBlame";
    case Error::NothingToSettle:
      return "NothingToSettle";
    case Error::TooFewBidders:
      return "TooFewBidders";
    case Error::BadProof:
      return "BadProof";
    case Error::NotFakeBidder:
      return "NotFakeBidder";
    case Error::OverLeafWithoutCalls:
      return "OverLeafWithoutCalls";
    case Error::AlreadyDisclosed:
      return "AlreadyDisclosed";
    case Error::Disqualified:
      return "Disqualified";
    case Error::NotReady:
      return "NotReady";
  }
  return "Unknown";
}

}  // namespace chainlab::simchain
