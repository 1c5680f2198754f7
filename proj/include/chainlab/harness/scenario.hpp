#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "chainlab/auction/contract.hpp"
#include "chainlab/blindvote/contract.hpp"
#include "chainlab/simchain/chain.hpp"
#include "chainlab/simchain/cost_model.hpp"

namespace chainlab::harness {

using simchain::Amount;
using simchain::Height;
using simchain::IdentityId;

class HarnessError : public std::runtime_error {
 public:
  enum class Kind { InvalidScenario, IncompatibleSequences };
  HarnessError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

enum class VoterPolicy {
  Honest,
  /// Registers, then never acts again.
  Silent,
  /// Commits but withholds the reveal.
  NoReveal,
  /// Off-chain mode: after the admin signs, delegates a second value on chain.
  DoubleDemand,
};

enum class AdminPolicy {
  Honest,
  /// Never signs the delegation of `refuse_target`.
  RefuseSign,
  /// Signs one extra key of its own and pushes an extra commitment.
  OverSign,
};

struct VoterSpec {
  std::string vote;
  VoterPolicy policy = VoterPolicy::Honest;
  bool approved = true;
};

struct VoteScenario {
  blindvote::VotingConfig config;
  std::vector<VoterSpec> voters;
  AdminPolicy admin_policy = AdminPolicy::Honest;
  std::size_t refuse_target = 0;
  int relays = 2;
  unsigned admin_key_bits = 64;
  unsigned voter_key_bits = 48;
  Amount voter_funds = 1'000'000'000;
  Amount admin_funds = 1'000'000'000;
  simchain::CostModel costs = simchain::CostModel::blind_vote_reference();
  simchain::ChainOptions chain;
};

enum class BidderPolicy {
  Honest,
  /// Registers and never acts again.
  Silent,
  /// Issues one right() call at a step where no bid lies to the right.
  SpuriousRight,
  /// Skips its first reveal, then behaves honestly.
  NoReveal,
};

struct BidderSpec {
  std::int64_t bid = 1;
  BidderPolicy policy = BidderPolicy::Honest;
  /// SpuriousRight: path step to strike at (0 picks the first step where the
  /// honest path goes left) and how many strikes in total.
  int spurious_step = 0;
  int spurious_strikes = 1;
};

enum class SchedulerKind {
  /// Seeded shuffle among bidders wanting to move in a block.
  Random,
  /// Fixed priority order, then bidder index.
  Scripted,
};

enum class CallCount {
  /// Exactly r pseudonymous calls per move.
  Fixed,
  /// Uniform in [r, 2r], drawn per path step.
  Random,
};

/// Who moved right at (round, traversal, step), by bidder index.
using MoveKey = std::tuple<int, int, int>;
using MoverMap = std::map<MoveKey, std::size_t>;

/// Replays a reference run's movers where the current run allows it.
struct WitnessPlan {
  MoverMap reference;
  /// Bidder whose own moves must line up with the reference.
  std::optional<std::size_t> observer;
};

struct AuctionScenario {
  auction::AuctionConfig config;
  std::vector<BidderSpec> bidders;
  SchedulerKind scheduler = SchedulerKind::Random;
  std::vector<std::size_t> priority;
  CallCount call_count = CallCount::Random;
  std::optional<WitnessPlan> witness;
  /// Nonce overrides by bidder index; the rest come from the seed.
  std::map<std::size_t, crypto::Nonce> nonces;
  Amount bidder_funds = 1'000'000'000;
  Height max_blocks = 200'000;
  simchain::CostModel costs = simchain::CostModel::auction_call_count();
  simchain::ChainOptions chain;
};

struct Scenario {
  enum class Protocol { BlindVote, Auction };
  Protocol protocol = Protocol::BlindVote;
  std::string name;
  VoteScenario vote;
  AuctionScenario auction;

  std::uint64_t seed() const {
    return protocol == Protocol::BlindVote ? vote.chain.seed : auction.chain.seed;
  }
  void set_seed(std::uint64_t seed);
};

/// Deadlines t_j = deploy + j * step_blocks.
std::array<Height, 6> evenly_spaced_deadlines(Height step_blocks);

/// Throws HarnessError(InvalidScenario). Relative cost-model paths resolve
/// against `base_dir`.
Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);
/// Config and policy checks; throws HarnessError(InvalidScenario).
void validate(const Scenario& scenario);

/// Comma-separated integers, e.g. "4,12,7". Throws HarnessError(InvalidScenario).
std::vector<std::int64_t> parse_bid_list(std::string_view text);

VoterPolicy parse_voter_policy(std::string_view text);
AdminPolicy parse_admin_policy(std::string_view text);
BidderPolicy parse_bidder_policy(std::string_view text);
std::string_view to_string(VoterPolicy p);
std::string_view to_string(AdminPolicy p);
std::string_view to_string(BidderPolicy p);

}  // namespace chainlab::harness
