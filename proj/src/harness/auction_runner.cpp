#include "chainlab/harness/auction_runner.hpp"

#include <algorithm>

#include "chainlab/auction/fake_bids.hpp"
#include "chainlab/crypto/commitment.hpp"
#include "chainlab/crypto/rng.hpp"

namespace chainlab::harness {

using auction::Variant;
using simchain::Arg;
using simchain::Call;

const auction::AuctionContract& AuctionRun::contract() const {
  return chain->contract_as<auction::AuctionContract>(contract_id);
}

std::size_t AuctionRun::bidder_of(IdentityId id) const {
  const auto& owner = chain->identity(id).owner;
  if (owner) {
    for (std::size_t i = 0; i < bidder_ids.size(); ++i) {
      if (parties[i].principal == *owner) return i;
    }
  }
  throw std::out_of_range("identity is not a bidder's");
}

crypto::Nonce default_nonce(std::uint64_t seed, std::size_t bidder) {
  return crypto::DeterministicRng(seed, "auction-nonce").derive(std::to_string(bidder)).next_digest();
}

namespace {

std::string key_label(const MoveKey& k) {
  return std::to_string(std::get<0>(k)) + "/" + std::to_string(std::get<1>(k)) + "/" + std::to_string(std::get<2>(k));
}

class Driver {
 public:
  Driver(const AuctionScenario& s, AuctionRun& run) : s_(s), run_(run), rng_(s.chain.seed, "auction-harness") {}

  void run();

 private:
  struct Bidder {
    IdentityId id;
    const BidderSpec* spec = nullptr;
    crypto::Nonce nonce{};
    crypto::Digest commitment{};
    int reveals_skipped = 0;
    int strikes_left = 0;
  };

  const auction::AuctionContract& view() const { return run_.contract(); }
  bool active(std::size_t i) const {
    return bidders_[i].spec->policy != BidderPolicy::Silent &&
           view().bidders()[i].status != auction::BidStatus::Slashed;
  }
  void send(IdentityId from, std::string fn, std::vector<Arg> args = {}, Amount value = 0) {
    run_.chain->submit(from, run_.contract_id, Call{std::move(fn), std::move(args)}, value);
  }
  IdentityId pseudonym(std::size_t bidder);
  crypto::Digest round_rho() const;
  std::vector<std::size_t> fake_set() const;
  std::optional<std::int64_t> fake_bid(std::size_t bidder) const;
  std::size_t pick_mover(const MoveKey& key, const std::vector<std::size_t>& wanting);
  int call_count(const MoveKey& key);
  void path_block(Height b, int t);
  void reveal_block(Height b);
  void verify_block();
  void refunds();
  void record(Height b, const std::vector<simchain::Transaction>& executed);

  const AuctionScenario& s_;
  AuctionRun& run_;
  crypto::DeterministicRng rng_;
  std::vector<Bidder> bidders_;
  IdentityId keeper_;
  std::uint64_t next_principal_ = 1;
};

IdentityId Driver::pseudonym(std::size_t bidder) {
  simchain::Chain& chain = *run_.chain;
  PartyAccount& party = run_.parties[bidder];
  const IdentityId id = chain.create_identity(party.principal, true, "pseudonym");
  const Amount funding = s_.config.right_deposit + chain.options().gas_price * s_.costs.at("right").max;
  chain.mint(id, funding);
  party.initial += funding;
  return id;
}

crypto::Digest Driver::round_rho() const {
  if (view().round_rho()) return *view().round_rho();
  return run_.chain->beacon_output(view().anchor());
}

std::vector<std::size_t> Driver::fake_set() const {
  if (s_.config.variant != Variant::P3) return {};
  return auction::select_fake_bidders(round_rho(), static_cast<std::size_t>(s_.config.fake_count), bidders_.size());
}

std::optional<std::int64_t> Driver::fake_bid(std::size_t bidder) const {
  const auto set = fake_set();
  if (std::find(set.begin(), set.end(), bidder) == set.end()) return std::nullopt;
  return auction::compute_fake_bid(round_rho(), bidders_[bidder].nonce, view().current_m());
}

std::size_t Driver::pick_mover(const MoveKey& key, const std::vector<std::size_t>& wanting) {
  std::vector<std::size_t> candidates = wanting;
  if (s_.witness) {
    auto it = s_.witness->reference.find(key);
    if (it != s_.witness->reference.end() &&
        std::find(wanting.begin(), wanting.end(), it->second) != wanting.end()) {
      return it->second;
    }
    const auto& observer = s_.witness->observer;
    const bool observer_moved = it != s_.witness->reference.end() && observer && it->second == *observer;
    if (observer && !observer_moved && candidates.size() > 1) {
      candidates.erase(std::remove(candidates.begin(), candidates.end(), *observer), candidates.end());
    }
  }
  std::vector<std::size_t> order;
  if (s_.scheduler == SchedulerKind::Scripted) {
    order = s_.priority;
    for (std::size_t i = 0; i < bidders_.size(); ++i) order.push_back(i);
  } else {
    for (std::size_t i = 0; i < bidders_.size(); ++i) order.push_back(i);
    auto race = rng_.derive("race-" + key_label(key));
    race.shuffle(order);
  }
  for (std::size_t i : order) {
    if (std::find(candidates.begin(), candidates.end(), i) != candidates.end()) return i;
  }
  return candidates.front();
}

int Driver::call_count(const MoveKey& key) {
  if (s_.call_count == CallCount::Fixed) return s_.config.r;
  auto draw = rng_.derive("calls-" + key_label(key));
  return static_cast<int>(draw.uniform(s_.config.r, 2 * static_cast<std::int64_t>(s_.config.r)));
}

void Driver::path_block(Height b, int t) {
  const auction::BatCursor cur = view().logical_cursor(b);
  if (cur.node.leaf()) return;
  const auction::Interval right = auction::bat_children(cur.node).second;
  std::vector<std::size_t> wanting;
  for (std::size_t i = 0; i < bidders_.size(); ++i) {
    if (!active(i)) continue;
    const auto fake = fake_bid(i);
    if (right.contains(bidders_[i].spec->bid) || (fake && right.contains(*fake))) wanting.push_back(i);
  }
  const MoveKey key{view().round(), view().traversals(), t};
  const std::vector<Arg> claim{cur.node.lo, cur.node.hi};
  if (wanting.empty()) {
    for (std::size_t i = 0; i < bidders_.size(); ++i) {
      Bidder& adv = bidders_[i];
      if (adv.spec->policy != BidderPolicy::SpuriousRight || adv.strikes_left == 0 || !active(i)) continue;
      if (adv.spec->spurious_step != 0 && adv.spec->spurious_step != t) continue;
      --adv.strikes_left;
      send(pseudonym(i), "right", claim, s_.config.right_deposit);
      run_.movers[key] = i;
      run_.moves.push_back(MoveRecord{b, std::get<0>(key), std::get<1>(key), t, i, true, {}});
      return;
    }
    return;
  }
  const std::size_t mover = pick_mover(key, wanting);
  const int calls = call_count(key);
  for (int k = 0; k < calls; ++k) send(pseudonym(mover), "right", claim, s_.config.right_deposit);
  run_.movers[key] = mover;
  run_.moves.push_back(MoveRecord{b, std::get<0>(key), std::get<1>(key), t, mover, false, {}});
}

void Driver::reveal_block(Height b) {
  const auction::BatCursor cur = view().logical_cursor(b);
  const std::int64_t leaf = cur.node.lo;
  const auto set = fake_set();
  for (std::size_t i = 0; i < bidders_.size(); ++i) {
    Bidder& bidder = bidders_[i];
    if (!active(i)) continue;
    if (bidder.spec->bid == leaf && view().bidders()[i].status == auction::BidStatus::Active) {
      if (bidder.spec->policy == BidderPolicy::NoReveal && bidder.reveals_skipped == 0) {
        ++bidder.reveals_skipped;
      } else {
        send(bidder.id, "bid", {bidder.nonce});
      }
    }
    if (std::find(set.begin(), set.end(), i) == set.end()) continue;
    const std::int64_t fake = auction::compute_fake_bid(round_rho(), bidder.nonce, view().current_m());
    if (fake != leaf) continue;
    const auto token = run_.proofs->prove_fake_bid(bidder.nonce, round_rho(), view().current_m(), fake,
                                                   bidder.commitment, bidder.spec->bid);
    send(bidder.id, "fakebid", {fake, static_cast<std::int64_t>(token.handle)});
  }
}

void Driver::verify_block() {
  for (std::size_t i : fake_set()) {
    if (!active(i) || view().disclosures().count(i) != 0) continue;
    const Bidder& bidder = bidders_[i];
    const std::int64_t fake = auction::compute_fake_bid(round_rho(), bidder.nonce, view().current_m());
    const auto token = run_.proofs->prove_fake_bid(bidder.nonce, round_rho(), view().current_m(), fake,
                                                   bidder.commitment, bidder.spec->bid);
    send(bidder.id, "fakebid", {fake, static_cast<std::int64_t>(token.handle)});
  }
}

void Driver::refunds() {
  const auto& c = view();
  for (std::size_t i = 0; i < bidders_.size(); ++i) {
    const Bidder& bidder = bidders_[i];
    if (bidder.spec->policy == BidderPolicy::Silent) continue;
    const auto status = c.bidders()[i].status;
    if (status == auction::BidStatus::Slashed || status == auction::BidStatus::Refunded) continue;
    const bool loser = c.outcome() == auction::Outcome::Winner && status == auction::BidStatus::Active &&
                       s_.config.variant != Variant::P0;
    if (loser) {
      const auto token =
          run_.proofs->prove_less_than(bidder.spec->bid, bidder.nonce, bidder.commitment, c.winning_bid());
      send(bidder.id, "refund", {static_cast<std::int64_t>(token.handle)});
    } else {
      send(bidder.id, "refund");
    }
  }
}

void Driver::record(Height b, const std::vector<simchain::Transaction>& executed) {
  for (const simchain::Transaction& tx : executed) {
    if (tx.call.function == "blame" && tx.valid()) {
      BlameRecord rec{b, std::nullopt, view().stored_cursor()};
      if (tx.note.rfind("slashed id:", 0) == 0) {
        const std::uint64_t id = std::stoull(tx.note.substr(11));
        rec.slashed = run_.bidder_of(IdentityId{id});
      }
      run_.blames.push_back(rec);
    }
  }
  if (!run_.moves.empty() && run_.moves.back().block == b) run_.moves.back().after = view().stored_cursor();
}

void Driver::run() {
  run_.chain = std::make_unique<simchain::Chain>(s_.chain);
  simchain::Chain& chain = *run_.chain;
  run_.proofs = std::make_shared<proofs::ProofRegistry>();

  for (std::size_t i = 0; i < s_.bidders.size(); ++i) {
    const PrincipalId principal{next_principal_++};
    const std::string name = "bidder" + std::to_string(i + 1);
    Bidder b;
    b.id = chain.create_identity(principal, false, name);
    chain.mint(b.id, s_.bidder_funds);
    run_.parties.push_back(PartyAccount{name, "bidder", principal, s_.bidder_funds});
    b.spec = &s_.bidders[i];
    auto override_nonce = s_.nonces.find(i);
    b.nonce = override_nonce != s_.nonces.end() ? override_nonce->second : default_nonce(s_.chain.seed, i);
    b.commitment = crypto::commit_bid(b.spec->bid, b.nonce);
    b.strikes_left = b.spec->policy == BidderPolicy::SpuriousRight ? b.spec->spurious_strikes : 0;
    bidders_.push_back(b);
    run_.bidder_ids.push_back(b.id);
    run_.nonces.push_back(b.nonce);
  }
  const PrincipalId keeper_principal{next_principal_++};
  keeper_ = chain.create_identity(keeper_principal, false, "keeper");
  chain.mint(keeper_, s_.bidder_funds);
  run_.parties.push_back(PartyAccount{"keeper", "keeper", keeper_principal, s_.bidder_funds});

  run_.contract_id =
      chain.deploy(keeper_, std::make_unique<auction::AuctionContract>(s_.config, run_.proofs), s_.costs, 0);

  const Variant variant = s_.config.variant;
  for (const Bidder& b : bidders_) {
    if (variant == Variant::P0) {
      send(b.id, "register", {}, s_.config.deposit);
    } else {
      send(b.id, "register", {b.commitment}, s_.config.deposit);
    }
  }
  chain.advance_to(view().registration_end());

  const bool tree = variant == Variant::P2 || variant == Variant::P3;
  const bool too_few = variant == Variant::P3 && static_cast<std::size_t>(s_.config.fake_count) > bidders_.size();
  int traversal = view().traversals();
  Height traversal_blocks = 0;
  while (view().outcome() == auction::Outcome::Open && chain.height() < s_.max_blocks && !too_few) {
    const Height b = chain.height() + 1;
    if (!tree) {
      if (b > view().countdown_end()) break;
      const std::int64_t x = view().countdown_offset(b);
      const std::int64_t value = s_.config.m - x + 1;
      for (std::size_t i = 0; i < bidders_.size(); ++i) {
        if (!active(i) || bidders_[i].spec->bid != value) continue;
        if (variant == Variant::P1) {
          send(bidders_[i].id, "bid", {bidders_[i].nonce});
        } else {
          send(bidders_[i].id, "bid");
        }
      }
      chain.advance_block();
      continue;
    }
    const auto& c = view();
    const bool resolved = c.winner().has_value() || c.fake_claim().has_value();
    if (auto t = c.path_step(b)) {
      ++run_.path_blocks;
      ++traversal_blocks;
      path_block(b, *t);
    } else if (b == c.path_end() + 1) {
      reveal_block(b);
    } else if (b == c.reveal_end() + 1) {
      if (variant == Variant::P3 && resolved) {
        verify_block();
      } else if (resolved) {
        send(keeper_, "settle");
      } else {
        send(keeper_, "blame");
      }
    } else if (variant == Variant::P3 && b == c.verify_end() + 1) {
      send(keeper_, "settle");
    }
    const auto executed = chain.advance_block();
    record(b, executed);
    if (view().traversals() != traversal) {
      traversal = view().traversals();
      traversal_blocks = 0;
    }
    run_.final_path_blocks = traversal_blocks;
  }
  run_.completed = view().outcome() != auction::Outcome::Open || !tree;
  refunds();
  chain.advance_block();
  run_.completed = run_.completed && view().outcome() != auction::Outcome::Open;

  close_accounts(chain, run_.parties);
  run_.penalties = penalty_events(chain, run_.parties);
  run_.calls_per_bidder.assign(bidders_.size(), 0);
  for (const simchain::Transaction& tx : chain.state().log) {
    const auto& owner = chain.identity(tx.sender).owner;
    for (std::size_t i = 0; owner && i < bidders_.size(); ++i) {
      if (run_.parties[i].principal == *owner) ++run_.calls_per_bidder[i];
    }
  }
}

}  // namespace

AuctionRun run_auction(const AuctionScenario& scenario) {
  AuctionRun run;
  Driver(scenario, run).run();
  return run;
}

}  // namespace chainlab::harness
