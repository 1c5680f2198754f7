#include "chainlab/harness/checks.hpp"

#include <algorithm>

#include "chainlab/auction/bat.hpp"

namespace chainlab::harness {

blindvote::Tally expected_tally(const VoteScenario& s) {
  blindvote::Tally tally;
  for (const VoterSpec& v : s.voters) {
    if (v.approved && (v.policy == VoterPolicy::Honest || v.policy == VoterPolicy::DoubleDemand)) ++tally[v.vote];
  }
  return tally;
}

std::vector<std::string> check_vote(const VoteScenario& s, const VoteRun& run) {
  std::vector<std::string> out;
  const simchain::Chain& chain = *run.chain;
  const auto& c = run.contract();
  if (chain.total_supply() != chain.minted()) out.push_back("currency not conserved");

  std::size_t scripted = s.admin_policy == AdminPolicy::Honest ? 0 : 1;
  for (const VoterSpec& v : s.voters) scripted += v.policy == VoterPolicy::DoubleDemand ? 1 : 0;
  if (run.penalties.size() != scripted) {
    out.push_back("expected " + std::to_string(scripted) + " penalty events, found " +
                  std::to_string(run.penalties.size()));
  }

  const auto& cfg = s.config;
  if (s.admin_policy == AdminPolicy::Honest) {
    if (c.cancelled()) out.push_back("honest admin but the vote was cancelled");
    if (c.tally() != expected_tally(s)) out.push_back("tally differs from the vote assignment");
    if (run.party("admin").net() != -run.party("admin").fees) out.push_back("admin did not recover its deposit");
    for (std::size_t i = 0; i < s.voters.size(); ++i) {
      const VoterSpec& v = s.voters[i];
      const PartyAccount& p = run.party("voter" + std::to_string(i + 1));
      Amount expected = -p.fees;
      if (v.approved) {
        const bool claims = v.policy == VoterPolicy::Honest || v.policy == VoterPolicy::NoReveal;
        expected -= claims ? 2 * cfg.relay_reward : cfg.fee;
      }
      if (p.net() != expected) {
        out.push_back(p.name + " net " + std::to_string(p.net()) + ", expected " + std::to_string(expected));
      }
    }
  } else {
    if (!c.cancelled()) out.push_back("misbehaving admin went unpunished");
    if (c.tally() != blindvote::Tally{}) out.push_back("cancelled vote produced a tally");
    const Amount refund = c.cancellation_refund();
    for (std::size_t i = 0; i < s.voters.size(); ++i) {
      if (!s.voters[i].approved) continue;
      const PartyAccount& p = run.party("voter" + std::to_string(i + 1));
      if (p.net() != refund - cfg.fee - p.fees) out.push_back(p.name + " was not made whole");
    }
  }
  return out;
}

std::vector<std::string> check_auction(const AuctionScenario& s, const AuctionRun& run) {
  std::vector<std::string> out;
  const simchain::Chain& chain = *run.chain;
  const auto& c = run.contract();
  if (chain.total_supply() != chain.minted()) out.push_back("currency not conserved");
  if (!run.completed) {
    out.push_back("auction did not conclude");
    return out;
  }
  std::vector<std::int64_t> bids;
  bool honest = true;
  int strikes = 0;
  int skips = 0;
  for (const BidderSpec& b : s.bidders) {
    bids.push_back(b.bid);
    honest = honest && b.policy == BidderPolicy::Honest;
  }
  for (const MoveRecord& m : run.moves) strikes += m.spurious ? 1 : 0;
  for (const BidderSpec& b : s.bidders) skips += b.policy == BidderPolicy::NoReveal ? 1 : 0;
  const auto oracle = auction::brute_force_winner(bids);
  const bool too_few = s.config.variant == auction::Variant::P3 &&
                       static_cast<std::size_t>(s.config.fake_count) > s.bidders.size();
  const bool silent_max = std::any_of(oracle.argmax.begin(), oracle.argmax.end(), [&](std::size_t i) {
    return s.bidders[i].policy == BidderPolicy::Silent;
  });
  if (too_few) {
    if (c.outcome() != auction::Outcome::NoWinner) out.push_back("too few bidders but the auction ran");
    return out;
  }
  if (!silent_max) {
    if (!c.winner() || c.winning_bid() != oracle.max || !oracle.argmax.count(*c.winner())) {
      out.push_back("winner differs from the brute-force maximum " + std::to_string(oracle.max));
    }
  }
  const auto variant = s.config.variant;
  if (variant == auction::Variant::P2 || variant == auction::Variant::P3) {
    if (c.blames() > strikes + skips) out.push_back("more blames than scripted misbehaviors");
    if (honest && c.blames() != 0) out.push_back("honest run needed a blame");
    if (honest && variant == auction::Variant::P2 && run.final_path_blocks != c.depth() * s.config.unit) {
      out.push_back("path took " + std::to_string(run.final_path_blocks) + " blocks, expected " +
                    std::to_string(c.depth() * s.config.unit));
    }
    if (honest && variant == auction::Variant::P2) {
      const auto bound = static_cast<std::size_t>(3 + (s.call_count == CallCount::Fixed ? 1 : 2) * s.config.r * c.depth());
      for (std::size_t calls : run.calls_per_bidder) {
        if (calls > bound) out.push_back("a bidder sent more than " + std::to_string(bound) + " transactions");
      }
    }
  } else if (honest) {
    if (c.concluded_offset() != s.config.m - oracle.max + 1) out.push_back("countdown ended at the wrong offset");
    for (std::size_t calls : run.calls_per_bidder) {
      if (calls > 3) out.push_back("a countdown bidder sent more than 3 transactions");
    }
  }
  return out;
}

}  // namespace chainlab::harness
