#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chainlab/harness/scenario.hpp"

namespace chainlab::harness {

struct SweepRange {
  std::string param;
  std::int64_t from = 0;
  std::int64_t to = 0;
  std::int64_t step = 1;

  /// "n=10..1000". Throws HarnessError(InvalidScenario).
  static SweepRange parse(std::string_view text, std::int64_t step);
  std::vector<std::int64_t> values() const;
};

/// Honest vote with n voters; votes cycle through a few options.
VoteScenario honest_vote(std::int64_t n, std::uint64_t seed);

/// n bidders with seeded random bids in [1, m].
AuctionScenario random_auction(auction::Variant variant, std::int64_t n, std::int64_t m, std::uint64_t seed);

/// Plot data. Vote sweeps accept param n; auction sweeps accept n or m.
/// Vote columns: n,transactions,total_gas,gas_per_voter.
/// Auction columns: n,m,total_calls,max_calls_per_bidder,path_blocks,rounds.
std::string sweep_vote_csv(const SweepRange& range, const VoteScenario& base);
std::string sweep_auction_csv(const SweepRange& range, const AuctionScenario& base);

}  // namespace chainlab::harness
