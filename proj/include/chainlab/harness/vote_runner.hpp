#pragma once

#include <memory>
#include <vector>

#include "chainlab/blindvote/contract.hpp"
#include "chainlab/harness/ledger.hpp"
#include "chainlab/harness/scenario.hpp"

namespace chainlab::harness {

struct VoteRun {
  std::unique_ptr<simchain::Chain> chain;
  IdentityId contract_id;
  /// "admin", then "voter1".."voterN", then "relay1"..
  std::vector<PartyAccount> parties;
  std::vector<IdentityId> voter_ids;
  std::vector<PenaltyEvent> penalties;
  std::size_t offchain_messages = 0;

  const blindvote::VotingContract& contract() const;
  simchain::Gas total_gas() const;
  const PartyAccount& party(std::string_view name) const;
};

/// Drives every step block by block. Deterministic in the scenario.
VoteRun run_vote(const VoteScenario& scenario);

}  // namespace chainlab::harness
