#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "chainlab/auction/contract.hpp"
#include "chainlab/harness/ledger.hpp"
#include "chainlab/harness/scenario.hpp"
#include "chainlab/proofs/proofs.hpp"

namespace chainlab::harness {

struct MoveRecord {
  Height block = 0;
  int round = 0;
  int traversal = 0;
  int t = 0;
  std::size_t mover = 0;
  bool spurious = false;
  /// Stored cursor once the block executed.
  auction::BatCursor after;
};

struct BlameRecord {
  Height block = 0;
  /// Bidder whose move was popped, if any.
  std::optional<std::size_t> slashed;
  auction::BatCursor restored;
};

struct AuctionRun {
  std::unique_ptr<simchain::Chain> chain;
  IdentityId contract_id;
  std::shared_ptr<proofs::ProofRegistry> proofs;
  /// "bidder1".."bidderN", then "keeper".
  std::vector<PartyAccount> parties;
  std::vector<IdentityId> bidder_ids;
  std::vector<crypto::Nonce> nonces;
  std::vector<MoveRecord> moves;
  std::vector<BlameRecord> blames;
  MoverMap movers;
  /// Blocks spent inside path windows, over all traversals.
  Height path_blocks = 0;
  /// Path blocks of the traversal that produced the outcome.
  Height final_path_blocks = 0;
  std::vector<std::size_t> calls_per_bidder;
  std::vector<PenaltyEvent> penalties;
  bool completed = false;

  const auction::AuctionContract& contract() const;
  std::size_t bidder_of(IdentityId id) const;
};

AuctionRun run_auction(const AuctionScenario& scenario);

/// Nonce the harness assigns bidder i unless the scenario overrides it.
crypto::Nonce default_nonce(std::uint64_t seed, std::size_t bidder);

}  // namespace chainlab::harness
