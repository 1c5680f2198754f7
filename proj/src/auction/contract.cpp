#include "chainlab/auction/contract.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "chainlab/auction/fake_bids.hpp"
#include "chainlab/crypto/commitment.hpp"
#include "chainlab/simchain/args.hpp"
#include "chainlab/simchain/chain.hpp"

namespace chainlab::auction {

using simchain::CallContext;
using simchain::CallResult;
using simchain::ChainError;
using simchain::Error;
using simchain::arg;
using simchain::expect_arity;

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::P0:
      return "P0";
    case Variant::P1:
      return "P1";
    case Variant::P2:
      return "P2";
    case Variant::P3:
      return "P3";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  std::string upper(text);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "P0") return Variant::P0;
  if (upper == "P1") return Variant::P1;
  if (upper == "P2") return Variant::P2;
  if (upper == "P3") return Variant::P3;
  throw std::invalid_argument("unknown auction variant '" + std::string(text) + "'");
}

std::string_view to_string(BidStatus s) {
  switch (s) {
    case BidStatus::Active:
      return "active";
    case BidStatus::Winner:
      return "winner";
    case BidStatus::Tied:
      return "tied";
    case BidStatus::Refunded:
      return "refunded";
    case BidStatus::Slashed:
      return "slashed";
  }
  return "?";
}

void validate(const AuctionConfig& c) {
  if (c.m < 1) throw ChainError(Error::BadConfig, "m must be at least 1");
  if (c.r < 1) throw ChainError(Error::BadConfig, "r must be at least 1");
  if (c.fake_count < 0) throw ChainError(Error::BadConfig, "fake count must be non-negative");
  if (c.variant == Variant::P3 && c.fake_count <= 1) {
    throw ChainError(Error::BadConfig, "protocol 3 needs more than one fake bidder");
  }
  if (c.deposit < 0 || c.right_deposit < 0 || c.reward_right < 0) {
    throw ChainError(Error::BadConfig, "amounts must be non-negative");
  }
  if (c.registration_blocks < 1 || c.unit < 1 || c.reveal_blocks < 1 || c.verify_blocks < 1) {
    throw ChainError(Error::BadConfig, "windows must span at least one block");
  }
}

AuctionContract::AuctionContract(AuctionConfig config, std::shared_ptr<const proofs::ProofRegistry> proofs)
    : config_(config), proofs_(std::move(proofs)), m_(config.m) {
  validate(config_);
  if (!proofs_) throw ChainError(Error::BadConfig, "missing proof verifier");
  cursor_ = BatCursor::root(m_);
}

void AuctionContract::on_deploy(IdentityId self, IdentityId, Amount attached, Height height) {
  if (attached != 0) throw ChainError(Error::WrongDeposit);
  self_ = self;
  deploy_height_ = height;
  reg_end_ = height + config_.registration_blocks;
  anchor_ = tree_variant() ? reg_end_ : 0;
}

std::int64_t AuctionContract::countdown_offset(Height block) const {
  if (block <= reg_end_ || block > countdown_end()) return 0;
  return (block - reg_end_ - 1) / config_.unit + 1;
}

std::optional<int> AuctionContract::path_step(Height block) const {
  if (!tree_variant() || outcome_ != Outcome::Open) return std::nullopt;
  if (block < path_start() || block > path_end()) return std::nullopt;
  return static_cast<int>((block - anchor_ - 1) / config_.unit + 1);
}

BatCursor AuctionContract::logical_cursor(Height block) const {
  BatCursor c = cursor_;
  if (block > anchor_) {
    const Height t = std::min<Height>(depth() + 1, (block - anchor_ - 1) / config_.unit + 1);
    c.catch_up(static_cast<int>(t));
  }
  return c;
}

std::int64_t AuctionContract::leaf_value() const {
  BatCursor c = cursor_;
  c.catch_up(depth() + 1);
  return c.node.lo;
}

std::optional<std::size_t> AuctionContract::bidder_index(IdentityId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void AuctionContract::ensure_round(CallContext& ctx) {
  if (config_.variant != Variant::P3 || rho_ || outcome_ != Outcome::Open || ctx.block() <= anchor_) return;
  if (too_few_bidders()) return;
  rho_ = ctx.chain().beacon_output(anchor_);
  fake_set_ = select_fake_bidders(*rho_, static_cast<std::size_t>(config_.fake_count), bidders_.size());
}

CallResult AuctionContract::execute(CallContext& ctx, const simchain::Call& call) {
  const std::string& fn = call.function;
  const Args& a = call.args;
  if (fn == "register") return register_bidder(ctx, a);
  if (fn == "bid") return tree_variant() ? reveal_bid(ctx, a) : countdown_bid(ctx, a);
  if (fn == "right") return right(ctx, a);
  if (fn == "blame") return blame(ctx, a);
  if (fn == "fakebid") return fakebid(ctx, a);
  if (fn == "settle") return settle(ctx, a);
  if (fn == "refund") return refund(ctx, a);
  return CallResult::reject(Error::UnknownFunction);
}

CallResult AuctionContract::register_bidder(CallContext& ctx, const Args& args) {
  crypto::Digest commitment{};
  if (config_.variant == Variant::P0) {
    expect_arity(args, 0);
  } else {
    expect_arity(args, 1);
    commitment = arg<crypto::Digest>(args, 0);
  }
  if (!in_registration(ctx.block())) return CallResult::reject(Error::WindowClosed);
  if (ctx.value() != config_.deposit) return CallResult::reject(Error::WrongDeposit);
  if (index_.count(ctx.sender()) != 0) return CallResult::reject(Error::DuplicateIdentity);
  index_.emplace(ctx.sender(), bidders_.size());
  bidders_.push_back(BidRecord{ctx.sender(), commitment, BidStatus::Active, 0});
  return CallResult::ok();
}

CallResult AuctionContract::countdown_bid(CallContext& ctx, const Args& args) {
  const bool committed = config_.variant == Variant::P1;
  expect_arity(args, committed ? 1 : 0);
  auto idx = bidder_index(ctx.sender());
  if (!idx) return CallResult::reject(Error::NotRegistered);
  const std::int64_t x = countdown_offset(ctx.block());
  if (x == 0) return CallResult::reject(Error::WindowClosed);
  BidRecord& record = bidders_[*idx];
  if (record.status == BidStatus::Slashed) return CallResult::reject(Error::Disqualified);
  const std::int64_t value = config_.m - x + 1;
  const bool opens = !committed || crypto::commit_open_bid(record.commitment, value, arg<crypto::Digest>(args, 0));
  if (outcome_ != Outcome::Open) {
    if (record.status == BidStatus::Winner || record.status == BidStatus::Tied) {
      return CallResult::reject(Error::AlreadyDisclosed);
    }
    if (x == concluded_offset_ && opens) {
      record.status = BidStatus::Tied;
      return CallResult::ok("tied");
    }
    return CallResult::reject(Error::Concluded);
  }
  if (!opens) {
    slash(ctx, *idx);
    return CallResult::penalize(Error::HashMismatch, "deposit slashed");
  }
  winner_ = *idx;
  winning_bid_ = value;
  concluded_offset_ = x;
  record.status = BidStatus::Winner;
  finalize(ctx, Outcome::Winner);
  return CallResult::ok("winner");
}

CallResult AuctionContract::reveal_bid(CallContext& ctx, const Args& args) {
  expect_arity(args, 1);
  const crypto::Digest& nonce = arg<crypto::Digest>(args, 0);
  if (outcome_ != Outcome::Open) return CallResult::reject(Error::Concluded);
  auto idx = bidder_index(ctx.sender());
  if (!idx) return CallResult::reject(Error::NotRegistered);
  BidRecord& record = bidders_[*idx];
  if (record.status == BidStatus::Slashed) return CallResult::reject(Error::Disqualified);
  if (record.status == BidStatus::Winner || record.status == BidStatus::Tied) {
    return CallResult::reject(Error::AlreadyDisclosed);
  }
  if (ctx.block() <= path_end()) return CallResult::reject(Error::NoLeafYet);
  if (!in_reveal(ctx.block())) return CallResult::reject(Error::WindowClosed);
  if (too_few_bidders()) return CallResult::reject(Error::TooFewBidders);
  ensure_round(ctx);
  const std::int64_t leaf = leaf_value();
  if (!crypto::commit_open_bid(record.commitment, leaf, nonce)) {
    slash(ctx, *idx);
    return CallResult::penalize(Error::HashMismatch, "deposit slashed");
  }
  if (!winner_) {
    winner_ = *idx;
    winning_bid_ = leaf;
    record.status = BidStatus::Winner;
    return CallResult::ok("winner");
  }
  record.status = BidStatus::Tied;
  return CallResult::ok("tied");
}

CallResult AuctionContract::right(CallContext& ctx, const Args& args) {
  expect_arity(args, 2);
  const Interval claimed{arg<std::int64_t>(args, 0), arg<std::int64_t>(args, 1)};
  if (!tree_variant()) return CallResult::reject(Error::WrongVariant);
  if (outcome_ != Outcome::Open) return CallResult::reject(Error::Concluded);
  if (ctx.value() != config_.right_deposit) return CallResult::reject(Error::WrongDeposit);
  const auto t = path_step(ctx.block());
  if (!t) return CallResult::reject(Error::WindowClosed);
  if (too_few_bidders()) return CallResult::reject(Error::TooFewBidders);
  ensure_round(ctx);

  BatCursor c = cursor_;
  c.catch_up(*t);
  const bool duplicate = c.step == *t && !moves_.empty() && moves_.back().t == *t;
  const Interval expected = duplicate ? moves_.back().from : c.node;
  if (claimed != expected) return CallResult::reject(Error::StaleInterval);
  if (!duplicate && c.node.leaf()) return CallResult::reject(Error::AtLeaf);

  int& rewarded = rewarded_per_step_[{traversals_, *t}];
  if (rewarded < config_.r) {
    ++rewarded;
    reward_list_.push_back(ctx.sender());
  }
  if (duplicate) {
    ctx.pay(ctx.sender(), ctx.value());
    right_log_.push_back({ctx.block(), ctx.sender(), ctx.value(), false});
    return CallResult::ok("duplicate");
  }
  const Interval from = c.node;
  c.right();
  cursor_ = c;
  moves_.push_back(Move{ctx.sender(), ctx.block(), *t, from, c, ctx.value()});
  held_.emplace_back(ctx.sender(), ctx.value());
  right_log_.push_back({ctx.block(), ctx.sender(), ctx.value(), true});
  return CallResult::ok();
}

void AuctionContract::start_traversal(Height anchor, int resume_step, BatCursor cursor) {
  anchor_ = anchor;
  resume_step_ = resume_step;
  cursor_ = cursor;
  ++traversals_;
}

CallResult AuctionContract::blame(CallContext& ctx, const Args& args) {
  expect_arity(args, 0);
  if (!tree_variant()) return CallResult::reject(Error::WrongVariant);
  if (outcome_ != Outcome::Open || winner_ || fake_claim_) return CallResult::reject(Error::NothingToBlame);
  if (ctx.block() <= reveal_end()) return CallResult::reject(Error::NotReady);
  if (too_few_bidders()) return CallResult::reject(Error::TooFewBidders);
  ensure_round(ctx);
  ++blames_;
  std::string note;
  if (!moves_.empty()) {
    const Move last = moves_.back();
    moves_.pop_back();
    auto it = std::find_if(held_.rbegin(), held_.rend(), [&](const auto& h) { return h.first == last.caller; });
    if (it != held_.rend()) {
      ctx.burn(it->second);
      held_.erase(std::next(it).base());
    }
    note = "slashed id:" + std::to_string(last.caller.value) + "; ";
  } else {
    const bool anyone = std::any_of(bidders_.begin(), bidders_.end(),
                                    [](const BidRecord& b) { return b.status != BidStatus::Slashed; });
    if (!anyone) {
      return_right_deposits(ctx);
      finalize(ctx, Outcome::NoWinner);
      return CallResult::ok("no bidders left");
    }
  }
  const BatCursor restore = moves_.empty() ? BatCursor::root(m_) : moves_.back().after;
  disclosures_.clear();
  start_traversal(ctx.block() - restore.step * config_.unit, restore.step, restore);
  return CallResult::ok(note + (moves_.empty() ? "rewound to root" : "rewound"));
}

CallResult AuctionContract::fakebid(CallContext& ctx, const Args& args) {
  expect_arity(args, 2);
  const std::int64_t claimed = arg<std::int64_t>(args, 0);
  const auto handle = static_cast<std::uint64_t>(arg<std::int64_t>(args, 1));
  if (config_.variant != Variant::P3) return CallResult::reject(Error::WrongVariant);
  if (outcome_ != Outcome::Open) return CallResult::reject(Error::Concluded);
  auto idx = bidder_index(ctx.sender());
  if (!idx) return CallResult::reject(Error::NotRegistered);
  if (too_few_bidders()) return CallResult::reject(Error::TooFewBidders);
  ensure_round(ctx);
  if (std::find(fake_set_.begin(), fake_set_.end(), *idx) == fake_set_.end()) {
    return CallResult::reject(Error::NotFakeBidder);
  }
  if (bidders_[*idx].status == BidStatus::Slashed) return CallResult::reject(Error::Disqualified);
  if (disclosures_.count(*idx) != 0) return CallResult::reject(Error::AlreadyDisclosed);
  const std::int64_t leaf = leaf_value();
  const bool reveal = in_reveal(ctx.block());
  if (reveal) {
    if (claimed != leaf) return CallResult::reject(Error::NotReady, "only leaf claims during reveal");
  } else if (in_verify(ctx.block())) {
    if (!winner_ && !fake_claim_) return CallResult::reject(Error::NotReady, "leaf unresolved");
  } else {
    return CallResult::reject(Error::WindowClosed);
  }
  const proofs::Statement statement =
      proofs::FakeBidCorrect{*rho_, m_, claimed, bidders_[*idx].commitment};
  if (!proofs_->verify(handle, statement)) {
    slash(ctx, *idx);
    return CallResult::penalize(Error::BadProof, "deposit slashed");
  }
  if (claimed > leaf) {
    slash(ctx, *idx);
    return CallResult::penalize(Error::OverLeafWithoutCalls, "deposit slashed");
  }
  disclosures_[*idx] = claimed;
  if (reveal && !fake_claim_) fake_claim_ = *idx;
  return CallResult::ok();
}

CallResult AuctionContract::settle(CallContext& ctx, const Args& args) {
  expect_arity(args, 0);
  if (!tree_variant()) return CallResult::reject(Error::WrongVariant);
  if (outcome_ != Outcome::Open) return CallResult::reject(Error::Concluded);
  const Height threshold = config_.variant == Variant::P3 ? verify_end() : reveal_end();
  if (ctx.block() <= threshold) return CallResult::reject(Error::NotReady);
  if (!winner_ && !fake_claim_) return CallResult::reject(Error::NothingToSettle);
  if (too_few_bidders()) return CallResult::reject(Error::TooFewBidders);
  ensure_round(ctx);
  std::string note;
  if (config_.variant == Variant::P3) {
    for (std::size_t idx : fake_set_) {
      if (bidders_[idx].status != BidStatus::Slashed && disclosures_.count(idx) == 0) {
        slash(ctx, idx);
        note += "slashed id:" + std::to_string(bidders_[idx].pk.value) + "; ";
      }
    }
  }
  return_right_deposits(ctx);
  if (winner_) {
    finalize(ctx, Outcome::Winner);
    return CallResult::ok(note + "winner");
  }
  const std::int64_t leaf = leaf_value();
  fake_leaves_.push_back(leaf);
  m_ = leaf - 1;
  if (m_ == 0) {
    m_ = 1;
    finalize(ctx, Outcome::NoWinner);
    return CallResult::ok(note + "no winner");
  }
  ++round_;
  rho_.reset();
  fake_set_.clear();
  disclosures_.clear();
  fake_claim_.reset();
  moves_.clear();
  start_traversal(ctx.block(), 0, BatCursor::root(m_));
  return CallResult::ok(note + "reset");
}

CallResult AuctionContract::refund(CallContext& ctx, const Args& args) {
  if (args.size() > 1) throw ChainError(Error::BadArguments, "refund takes at most one proof");
  auto idx = bidder_index(ctx.sender());
  if (!idx) return CallResult::reject(Error::NotRegistered);
  BidRecord& record = bidders_[*idx];
  if (record.status == BidStatus::Slashed) return CallResult::reject(Error::Disqualified);
  if (record.status == BidStatus::Refunded) return CallResult::reject(Error::AlreadyRefunded);
  if (outcome_ == Outcome::Open) {
    const bool countdown_over = !tree_variant() && ctx.block() > countdown_end();
    const bool aborted = too_few_bidders() && ctx.block() > reg_end_;
    if (!countdown_over && !aborted) return CallResult::reject(Error::NotReady);
    finalize(ctx, Outcome::NoWinner);
  }
  const Amount amount = config_.deposit - record.levy;
  const bool needs_proof = outcome_ == Outcome::Winner && record.status == BidStatus::Active &&
                           config_.variant != Variant::P0;
  if (needs_proof) {
    bool valid = false;
    if (args.size() == 1) {
      const auto handle = static_cast<std::uint64_t>(arg<std::int64_t>(args, 0));
      valid = proofs_->verify(handle, proofs::LessThan{record.commitment, winning_bid_});
    }
    if (!valid) {
      ctx.burn(amount);
      record.status = BidStatus::Slashed;
      return CallResult::penalize(Error::BadProof, "deposit burned");
    }
  }
  ctx.pay(ctx.sender(), amount);
  record.status = BidStatus::Refunded;
  return CallResult::ok();
}

void AuctionContract::slash(CallContext& ctx, std::size_t bidder) {
  BidRecord& record = bidders_[bidder];
  ctx.burn(config_.deposit - record.levy);
  record.status = BidStatus::Slashed;
}

void AuctionContract::return_right_deposits(CallContext& ctx) {
  for (const auto& [caller, amount] : held_) ctx.pay(caller, amount);
  held_.clear();
}

void AuctionContract::finalize(CallContext& ctx, Outcome outcome) {
  outcome_ = outcome;
  std::vector<std::size_t> payers;
  for (std::size_t i = 0; i < bidders_.size(); ++i) {
    if (bidders_[i].status != BidStatus::Slashed) payers.push_back(i);
  }
  if (payers.empty() || config_.reward_right == 0) return;
  const Amount capacity = config_.deposit * static_cast<Amount>(payers.size());
  Amount pool = 0;
  for (IdentityId caller : reward_list_) {
    const Amount amount = std::min(config_.reward_right, capacity - pool);
    if (amount <= 0) break;
    ctx.pay(caller, amount);
    pool += amount;
  }
  const auto count = static_cast<Amount>(payers.size());
  for (std::size_t k = 0; k < payers.size(); ++k) {
    bidders_[payers[k]].levy = pool / count + (static_cast<Amount>(k) < pool % count ? 1 : 0);
  }
}

void AuctionContract::digest_into(crypto::HashWriter& w) const {
  w.add(std::string_view("auction")).add(std::string_view(to_string(config_.variant)));
  w.add(m_).add(static_cast<std::int64_t>(round_)).add(static_cast<std::int64_t>(traversals_));
  w.add(static_cast<std::int64_t>(anchor_)).add(static_cast<std::int64_t>(resume_step_));
  w.add(cursor_.node.lo).add(cursor_.node.hi).add(static_cast<std::int64_t>(cursor_.step));
  for (const BidRecord& b : bidders_) {
    w.add(b.pk.value).add(b.commitment).add(static_cast<std::int64_t>(b.status)).add(b.levy);
  }
  for (const RightEntry& e : right_log_) {
    w.add(static_cast<std::int64_t>(e.block)).add(e.caller.value).add(static_cast<std::uint64_t>(e.effective));
  }
  for (IdentityId id : reward_list_) w.add(id.value);
  if (rho_) w.add(*rho_);
  for (std::size_t i : fake_set_) w.add(static_cast<std::uint64_t>(i));
  for (const auto& [i, b] : disclosures_) w.add(static_cast<std::uint64_t>(i)).add(b);
  w.add(winner_ ? static_cast<std::int64_t>(*winner_) : std::int64_t{-1}).add(winning_bid_);
  w.add(static_cast<std::int64_t>(outcome_));
}

}  // namespace chainlab::auction
