#include <gtest/gtest.h>

#include <filesystem>

#include "chainlab/auction/bat.hpp"
#include "chainlab/harness/checks.hpp"
#include "chainlab/harness/od_check.hpp"
#include "chainlab/harness/report.hpp"
#include "chainlab/harness/scenario.hpp"
#include "chainlab/harness/sweep.hpp"

namespace h = chainlab::harness;
namespace au = chainlab::auction;
using h::HarnessError;

namespace {

const std::filesystem::path kScenarios = std::filesystem::path(CHAINLAB_SOURCE_DIR) / "scenarios";

void expect_invalid(std::string_view json) {
  try {
    h::validate(h::parse_scenario(json));
    ADD_FAILURE() << "accepted: " << json;
  } catch (const HarnessError& e) {
    EXPECT_EQ(e.kind(), HarnessError::Kind::InvalidScenario) << json;
  }
}

h::AuctionScenario p2(std::vector<std::int64_t> bids, std::int64_t m) {
  h::AuctionScenario s;
  s.config.variant = au::Variant::P2;
  s.config.m = m;
  s.config.deposit = 100;
  s.config.right_deposit = 10;
  for (auto b : bids) s.bidders.push_back(h::BidderSpec{b});
  return s;
}

}  // namespace

TEST(Scenario, ParsesDefaultsAndSeed) {
  const auto s = h::parse_scenario(R"({"protocol": "auction", "seed": 9, "auction": {"bids": [3, 12, 7]}})");
  ASSERT_EQ(s.protocol, h::Scenario::Protocol::Auction);
  EXPECT_EQ(s.seed(), 9u);
  EXPECT_EQ(s.auction.config.m, 15);
  EXPECT_EQ(s.auction.bidders.size(), 3u);
  EXPECT_EQ(s.auction.config.variant, au::Variant::P2);
  EXPECT_NO_THROW(h::validate(s));

  auto copy = s;
  copy.set_seed(4);
  EXPECT_EQ(copy.seed(), 4u);
}

TEST(Scenario, PriorityIsOneBased) {
  const auto s = h::parse_scenario(
      R"({"protocol": "auction", "auction": {"bids": [1, 2], "scheduler": "scripted", "priority": [2, 1]}})");
  EXPECT_EQ(s.auction.scheduler, h::SchedulerKind::Scripted);
  EXPECT_EQ(s.auction.priority, (std::vector<std::size_t>{1, 0}));
}

TEST(Scenario, ParseErrors) {
  expect_invalid("not json");
  expect_invalid("[1, 2]");
  expect_invalid(R"({"protocol": "lottery"})");
  expect_invalid(R"({"protocol": "auction", "colour": 1, "auction": {"bids": [1]}})");
  expect_invalid(R"({"protocol": "auction", "auction": {"bids": [1], "bogus": 2}})");
  expect_invalid(R"({"protocol": "auction", "auction": {"bids": []}})");
  expect_invalid(R"({"protocol": "auction", "auction": {"bids": [16]}})");
  expect_invalid(R"({"protocol": "auction", "auction": {"bids": [0]}})");
  expect_invalid(R"({"protocol": "auction", "auction": {"bids": ["x"]}})");
  expect_invalid(R"({"protocol": "auction", "auction": {"bids": [1], "variant": "P9"}})");
  expect_invalid(R"({"protocol": "auction", "auction": {"bids": [1], "priority": [0]}})");
  expect_invalid(R"({"protocol": "auction", "auction": {"bids": [1], "priority": [3]}})");
  expect_invalid(R"({"protocol": "auction", "auction": {"bids": [1], "scheduler": "fifo"}})");
  expect_invalid(R"({"protocol": "auction", "auction": {"bids": [1, 2], "variant": "P3", "fake_count": 1}})");
  expect_invalid(R"({"protocol": "blindvote", "vote": {}})");
  expect_invalid(R"({"protocol": "blindvote", "vote": {"votes": ["a"], "deadlines": [1, 2, 3]}})");
  expect_invalid(R"({"protocol": "blindvote", "vote": {"votes": ["a"], "deadlines": [1, 2, 2, 4, 5, 6]}})");
  expect_invalid(R"({"protocol": "blindvote", "vote": {"votes": ["a"], "fee": 5}})");
  expect_invalid(R"({"protocol": "blindvote", "vote": {"voters": [{"vote": "a", "policy": "double-demand"}]}})");
  expect_invalid(R"({"protocol": "blindvote", "vote": {"voters": [{"vote": "a", "policy": "lazy"}]}})");
  expect_invalid(R"({"protocol": "blindvote", "costs": "/nonexistent.costs", "vote": {"votes": ["a"]}})");
  expect_invalid(R"({"protocol": "blindvote", "gas_price": -1, "vote": {"votes": ["a"]}})");
}

TEST(Scenario, ShippedScenariosValidate) {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kScenarios)) {
    if (entry.path().extension() != ".json") continue;
    const auto s = h::load_scenario(entry.path());
    EXPECT_NO_THROW(h::validate(s)) << entry.path();
    EXPECT_EQ(s.name, entry.path().stem().string());
    ++count;
  }
  EXPECT_GE(count, 10);
  EXPECT_THROW(h::load_scenario(kScenarios / "missing.json"), HarnessError);
}

TEST(Scenario, BidList) {
  EXPECT_EQ(h::parse_bid_list("4, 12,7"), (std::vector<std::int64_t>{4, 12, 7}));
  EXPECT_THROW(h::parse_bid_list(""), HarnessError);
  EXPECT_THROW(h::parse_bid_list("4,,7"), HarnessError);
  EXPECT_THROW(h::parse_bid_list("4,x"), HarnessError);
}

TEST(Trace, CanonicalizeRenamesByFirstAppearance) {
  h::ObservationTrace t{"outside",
                        {{1, "register", true, "id:9", false},
                         {2, "right", true, "id:4", false},
                         {3, "bid", true, "id:9", false}}};
  const auto c = h::canonicalize(t);
  EXPECT_EQ(c.events[0].sender, "#1");
  EXPECT_EQ(c.events[1].sender, "#2");
  EXPECT_EQ(c.events[2].sender, "#1");
  EXPECT_EQ(c.events[1].function, "right");

  auto other = c;
  EXPECT_EQ(h::first_divergence(c, other), std::nullopt);
  other.events[2].valid = false;
  EXPECT_EQ(h::first_divergence(c, other), 2u);
  other.events.pop_back();
  EXPECT_EQ(h::first_divergence(c, other), 2u);
}

TEST(Replay, SameSeedGivesByteIdenticalLogs) {
  auto a = h::load_scenario(kScenarios / "auction_p3.json");
  const auto r1 = h::run_auction(a.auction);
  const auto r2 = h::run_auction(a.auction);
  EXPECT_EQ(h::serialize_log(*r1.chain), h::serialize_log(*r2.chain));
  EXPECT_EQ(r1.chain->state_digest(), r2.chain->state_digest());

  a.set_seed(a.seed() + 1);
  const auto r3 = h::run_auction(a.auction);
  EXPECT_NE(r1.chain->state_digest(), r3.chain->state_digest());

  const auto v = h::load_scenario(kScenarios / "vote_honest.json");
  EXPECT_EQ(h::serialize_log(*h::run_vote(v.vote).chain), h::serialize_log(*h::run_vote(v.vote).chain));
}

TEST(VoteRun, HonestTallyAndChecks) {
  const auto s = h::load_scenario(kScenarios / "vote_honest.json");
  const auto run = h::run_vote(s.vote);
  EXPECT_EQ(run.contract().tally(), (chainlab::blindvote::Tally{{"no", 1}, {"yes", 2}}));
  EXPECT_TRUE(h::check_vote(s.vote, run).empty());
  EXPECT_TRUE(run.penalties.empty());
  EXPECT_EQ(run.party("admin").role, "admin");
}

TEST(VoteRun, MisbehaviourIsPenalized) {
  const auto refuse = h::run_vote(h::load_scenario(kScenarios / "vote_refuse_sign.json").vote);
  ASSERT_FALSE(refuse.penalties.empty());
  EXPECT_TRUE(refuse.contract().cancelled());
  EXPECT_EQ(refuse.penalties.front().kind, "RefusedSignature");
  EXPECT_EQ(refuse.penalties.front().offender, "admin");

  const auto dd = h::run_vote(h::load_scenario(kScenarios / "vote_double_demand.json").vote);
  ASSERT_FALSE(dd.penalties.empty());
  EXPECT_EQ(dd.penalties.front().kind, "DoubleDemand");
}

TEST(AuctionRun, WinnerMatchesBruteForce) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto s = h::random_auction(au::Variant::P2, 6, 40, seed);
    s.chain.seed = seed;
    const auto run = h::run_auction(s);
    std::vector<std::int64_t> bids;
    for (const auto& b : s.bidders) bids.push_back(b.bid);
    const auto oracle = au::brute_force_winner(bids);
    ASSERT_TRUE(run.completed);
    ASSERT_TRUE(run.contract().winner().has_value());
    EXPECT_EQ(run.contract().winning_bid(), oracle.max);
    EXPECT_TRUE(oracle.argmax.count(*run.contract().winner()));
    EXPECT_TRUE(h::check_auction(s, run).empty());
  }
}

TEST(AuctionRun, CallBoundForEightBiddersOverSixtyFour) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto s = h::random_auction(au::Variant::P2, 8, 64, seed);
    s.config.r = 2;
    const auto run = h::run_auction(s);
    ASSERT_TRUE(run.completed);
    // Random mode draws up to 2r calls per move; depth of BAT(64) is 6.
    const std::size_t bound = 3 + 2 * 2 * 6;
    for (std::size_t c : run.calls_per_bidder) EXPECT_LE(c, bound) << seed;
    EXPECT_EQ(run.path_blocks, 6);
  }
}

TEST(OdCheck, CompatibilityAndObserverParsing) {
  EXPECT_TRUE(h::compatible({4, 12, 7}, {9, 12, 2}));
  EXPECT_FALSE(h::compatible({4, 12, 7}, {12, 12, 2}));
  EXPECT_FALSE(h::compatible({4, 12, 7}, {4, 11, 7}));
  EXPECT_EQ(h::ObserverSpec::parse("outside").bidder, std::nullopt);
  EXPECT_EQ(h::ObserverSpec::parse("3").bidder, 2u);
  EXPECT_EQ(h::ObserverSpec::parse("bidder2").bidder, 1u);
  EXPECT_THROW(h::ObserverSpec::parse("0"), HarnessError);
  EXPECT_THROW(h::ObserverSpec::parse("alice"), HarnessError);

  auto base = p2({1, 1, 1}, 15);
  try {
    h::check_observational_determinism(base, {4, 12, 7}, {4, 11, 7}, {});
    FAIL();
  } catch (const HarnessError& e) {
    EXPECT_EQ(e.kind(), HarnessError::Kind::IncompatibleSequences);
  }
}

TEST(OdCheck, P3HidesLosingBids) {
  auto base = h::load_scenario(kScenarios / "auction_p3.json").auction;
  const auto v = h::check_observational_determinism(base, {4, 12, 7}, {9, 12, 2}, {});
  EXPECT_TRUE(v.equal) << v.describe();
}

TEST(Report, EmptyAndPopulatedCsv) {
  EXPECT_EQ(h::gas_csv({}), "function,calls,total_gas,payer_role\ntotal,0,0,\n");
  EXPECT_EQ(h::auction_csv({}), "round,blocks_used,calls_per_bidder,winner,max_bid,restarts\n");
  EXPECT_EQ(h::penalties_csv({}), "block,seq,function,kind,offender\n");
  EXPECT_EQ(h::auction_csv({h::AuctionSummary{}}),
            "round,blocks_used,calls_per_bidder,winner,max_bid,restarts\n0,0,0,,0,0\n");

  const auto s = h::load_scenario(kScenarios / "vote_honest.json");
  const auto run = h::run_vote(s.vote);
  const auto rows = h::gas_rows(*run.chain, run.parties);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows.front().function, "constructor");
  EXPECT_EQ(rows.front().payer_role, "admin");
  std::int64_t sum = 0;
  for (const auto& r : rows) sum += r.total_gas;
  EXPECT_EQ(sum, run.total_gas());
  const auto csv = h::gas_csv(rows);
  EXPECT_NE(csv.find("total," + std::to_string(run.chain->state().log.size()) + "," + std::to_string(sum)),
            std::string::npos);
}

TEST(Sweep, RangeParsing) {
  const auto r = h::SweepRange::parse("n=10..40", 10);
  EXPECT_EQ(r.param, "n");
  EXPECT_EQ(r.values(), (std::vector<std::int64_t>{10, 20, 30, 40}));
  EXPECT_EQ(h::SweepRange::parse("m=3..4", 5).values(), (std::vector<std::int64_t>{3}));
  for (const char* bad : {"n10..40", "n=10-40", "=1..2", "n=5..1", "n=0..3", "n=a..3"}) {
    EXPECT_THROW(h::SweepRange::parse(bad, 1), HarnessError) << bad;
  }
  EXPECT_THROW(h::SweepRange::parse("n=1..3", 0), HarnessError);
}

TEST(Sweep, VoteGasGrowsWithVoters) {
  const auto csv = h::sweep_vote_csv(h::SweepRange::parse("n=2..6", 2), h::honest_vote(1, 1));
  EXPECT_EQ(csv.rfind("n,transactions,total_gas,gas_per_voter\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_THROW(h::sweep_vote_csv(h::SweepRange::parse("m=2..6", 2), h::honest_vote(1, 1)), HarnessError);
}
