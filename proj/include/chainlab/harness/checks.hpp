#pragma once

#include <string>
#include <vector>

#include "chainlab/harness/auction_runner.hpp"
#include "chainlab/harness/vote_runner.hpp"

namespace chainlab::harness {

/// Violated properties of a finished run, empty when all hold.
std::vector<std::string> check_vote(const VoteScenario& scenario, const VoteRun& run);
std::vector<std::string> check_auction(const AuctionScenario& scenario, const AuctionRun& run);

/// Multiset of the votes that an honest run must count.
blindvote::Tally expected_tally(const VoteScenario& scenario);

}  // namespace chainlab::harness
