#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chainlab/simchain/chain.hpp"

namespace chainlab::harness {

using simchain::Amount;
using simchain::Height;
using simchain::IdentityId;
using simchain::PrincipalId;

/// Balances of one principal across all of its identities.
struct PartyAccount {
  std::string name;
  std::string role;
  PrincipalId principal;
  Amount initial = 0;
  Amount final = 0;
  Amount fees = 0;
  Amount net() const { return final - initial; }
};

struct PenaltyEvent {
  Height block = 0;
  std::uint64_t seq = 0;
  std::string function;
  std::string kind;
  std::string offender;
};

/// Fills `final` and `fees` from the chain.
void close_accounts(const simchain::Chain& chain, std::vector<PartyAccount>& parties);

const PartyAccount* find_party(const std::vector<PartyAccount>& parties, std::string_view name);

/// Party name of an identity ("?" when unknown).
std::string party_of(const simchain::Chain& chain, const std::vector<PartyAccount>& parties, IdentityId id);

/// One event per punished misbehavior found in the log.
std::vector<PenaltyEvent> penalty_events(const simchain::Chain& chain, const std::vector<PartyAccount>& parties);

}  // namespace chainlab::harness
