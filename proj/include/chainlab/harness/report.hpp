#pragma once

#include <string>
#include <vector>

#include "chainlab/harness/auction_runner.hpp"
#include "chainlab/harness/ledger.hpp"
#include "chainlab/harness/vote_runner.hpp"

namespace chainlab::harness {

struct GasRow {
  std::string function;
  std::size_t calls = 0;
  simchain::Gas total_gas = 0;
  /// Roles of the senders, '+'-joined in first-seen order.
  std::string payer_role;
};

/// Per-function totals over the log, by first appearance.
std::vector<GasRow> gas_rows(const simchain::Chain& chain, const std::vector<PartyAccount>& parties);

/// function,calls,total_gas,payer_role plus a closing total row.
std::string gas_csv(const std::vector<GasRow>& rows);

struct AuctionSummary {
  int rounds = 0;
  Height blocks_used = 0;
  std::size_t calls_per_bidder = 0;
  std::string winner;
  std::int64_t max_bid = 0;
  int restarts = 0;
};

AuctionSummary summarize(const AuctionRun& run);

/// round,blocks_used,calls_per_bidder,winner,max_bid,restarts
std::string auction_csv(const std::vector<AuctionSummary>& rows);

std::string balances_csv(const std::vector<PartyAccount>& parties);
std::string penalties_csv(const std::vector<PenaltyEvent>& events);

}  // namespace chainlab::harness
