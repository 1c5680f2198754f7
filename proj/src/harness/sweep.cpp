#include "chainlab/harness/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "chainlab/crypto/rng.hpp"
#include "chainlab/harness/auction_runner.hpp"
#include "chainlab/harness/vote_runner.hpp"

namespace chainlab::harness {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw HarnessError(HarnessError::Kind::InvalidScenario, what); }

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    invalid("bad integer '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

SweepRange SweepRange::parse(std::string_view text, std::int64_t step) {
  const auto eq = text.find('=');
  const auto dots = text.find("..");
  if (eq == std::string_view::npos || dots == std::string_view::npos || dots < eq) {
    invalid("sweep range must look like name=from..to");
  }
  SweepRange r{std::string(text.substr(0, eq)), parse_int(text.substr(eq + 1, dots - eq - 1)),
               parse_int(text.substr(dots + 2)), step};
  if (r.param.empty() || r.step < 1 || r.from < 1 || r.to < r.from) invalid("empty or inverted sweep range");
  return r;
}

std::vector<std::int64_t> SweepRange::values() const {
  std::vector<std::int64_t> out;
  for (std::int64_t v = from; v <= to; v += step) out.push_back(v);
  return out;
}

VoteScenario honest_vote(std::int64_t n, std::uint64_t seed) {
  VoteScenario s;
  s.chain.seed = seed;
  static const char* options[] = {"yes", "no", "abstain"};
  crypto::DeterministicRng rng(seed, "vote-assignment");
  for (std::int64_t i = 0; i < n; ++i) s.voters.push_back(VoterSpec{options[rng.below(3)]});
  s.config.n_max = n;
  s.config.fee = 100;
  s.config.relay_reward = 10;
  s.config.admin_deposit = 1000;
  s.config.deadlines = evenly_spaced_deadlines(2);
  s.voter_key_bits = 32;
  return s;
}

AuctionScenario random_auction(auction::Variant variant, std::int64_t n, std::int64_t m, std::uint64_t seed) {
  AuctionScenario s;
  s.chain.seed = seed;
  s.config.variant = variant;
  s.config.m = m;
  s.config.deposit = 100;
  s.config.right_deposit = 10;
  s.config.fake_count = variant == auction::Variant::P3 ? 2 : 0;
  crypto::DeterministicRng rng(seed, "auction-bids");
  for (std::int64_t i = 0; i < n; ++i) s.bidders.push_back(BidderSpec{rng.uniform(1, m)});
  return s;
}

std::string sweep_vote_csv(const SweepRange& range, const VoteScenario& base) {
  if (range.param != "n") invalid("vote sweeps vary n only");
  std::ostringstream os;
  os << "n,transactions,total_gas,gas_per_voter\n";
  for (std::int64_t n : range.values()) {
    VoteScenario s = honest_vote(n, base.chain.seed);
    s.config.fee = base.config.fee;
    s.config.relay_reward = base.config.relay_reward;
    s.config.admin_deposit = base.config.admin_deposit;
    s.config.variant = base.config.variant;
    s.config.offchain_signing = base.config.offchain_signing;
    s.costs = base.costs;
    s.chain = base.chain;
    const VoteRun run = run_vote(s);
    const auto gas = run.total_gas();
    os << n << ',' << run.chain->state().log.size() << ',' << gas << ',' << gas / n << '\n';
  }
  return os.str();
}

std::string sweep_auction_csv(const SweepRange& range, const AuctionScenario& base) {
  if (range.param != "n" && range.param != "m") invalid("auction sweeps vary n or m");
  std::ostringstream os;
  os << "n,m,total_calls,max_calls_per_bidder,path_blocks,rounds\n";
  const auto n0 = static_cast<std::int64_t>(base.bidders.size());
  for (std::int64_t v : range.values()) {
    const std::int64_t n = range.param == "n" ? v : n0;
    const std::int64_t m = range.param == "m" ? v : base.config.m;
    AuctionScenario s = random_auction(base.config.variant, n, m, base.chain.seed + static_cast<std::uint64_t>(v));
    auto cfg = base.config;
    cfg.m = m;
    s.config = cfg;
    s.call_count = base.call_count;
    s.costs = base.costs;
    const AuctionRun run = run_auction(s);
    std::size_t total = 0;
    for (std::size_t c : run.calls_per_bidder) total += c;
    const std::size_t max_calls = *std::max_element(run.calls_per_bidder.begin(), run.calls_per_bidder.end());
    os << n << ',' << m << ',' << total << ',' << max_calls << ',' << run.path_blocks << ','
       << run.contract().round() << '\n';
  }
  return os.str();
}

}  // namespace chainlab::harness
