#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "chainlab/auction/bat.hpp"
#include "chainlab/proofs/proofs.hpp"
#include "chainlab/simchain/contract.hpp"

namespace chainlab::auction {

using simchain::Amount;
using simchain::Height;
using simchain::IdentityId;

enum class Variant { P0, P1, P2, P3 };

std::string_view to_string(Variant v);
/// Accepts "P0".."P3" (any case). Throws std::invalid_argument.
Variant parse_variant(std::string_view text);

struct AuctionConfig {
  Variant variant = Variant::P2;
  std::int64_t m = 1;
  /// Bidder deposit d.
  Amount deposit = 0;
  /// Deposit d' attached to every right() call.
  Amount right_deposit = 0;
  /// Minimum pseudonymous right() calls per honest mover.
  int r = 1;
  int fake_count = 0;
  /// Paid to each of the first r right() callers of every path step.
  Amount reward_right = 0;
  Height registration_blocks = 4;
  /// Blocks per protocol time unit (countdown value or tree edge).
  Height unit = 1;
  Height reveal_blocks = 2;
  /// Window for fake-bid disclosure after the reveal window.
  Height verify_blocks = 2;
};

/// Throws ChainError(BadConfig).
void validate(const AuctionConfig& config);

enum class BidStatus { Active, Winner, Tied, Refunded, Slashed };

std::string_view to_string(BidStatus s);

struct BidRecord {
  IdentityId pk;
  crypto::Digest commitment{};
  BidStatus status = BidStatus::Active;
  /// Share of the right-call rewards withheld from the refund.
  Amount levy = 0;
};

struct RightEntry {
  Height block = 0;
  IdentityId caller;
  Amount deposit = 0;
  bool effective = false;
};

struct FakeAssignment {
  std::size_t bidder = 0;
  std::int64_t fake_bid = 0;
  crypto::Digest rho{};
};

enum class Outcome { Open, Winner, NoWinner };

class AuctionContract final : public simchain::Contract {
 public:
  AuctionContract(AuctionConfig config, std::shared_ptr<const proofs::ProofRegistry> proofs);

  std::string_view kind() const override { return "auction"; }
  void on_deploy(IdentityId self, IdentityId deployer, Amount attached, Height height) override;
  simchain::CallResult execute(simchain::CallContext& ctx, const simchain::Call& call) override;
  void digest_into(crypto::HashWriter& w) const override;

  const AuctionConfig& config() const { return config_; }
  Height registration_end() const { return reg_end_; }
  Height countdown_end() const { return reg_end_ + config_.m * config_.unit; }
  /// Countdown offset x of a block, 1-based; 0 outside the countdown.
  std::int64_t countdown_offset(Height block) const;

  std::int64_t current_m() const { return m_; }
  int depth() const { return bat_depth(m_); }
  int round() const { return round_; }
  int traversals() const { return traversals_; }
  int blames() const { return blames_; }
  Height anchor() const { return anchor_; }
  Height path_start() const { return anchor_ + resume_step_ * config_.unit + 1; }
  Height path_end() const { return anchor_ + depth() * config_.unit; }
  Height reveal_end() const { return path_end() + config_.reveal_blocks; }
  Height verify_end() const { return reveal_end() + config_.verify_blocks; }
  /// Path step t acted on by a transaction in `block`, if it lies in the
  /// current path window.
  std::optional<int> path_step(Height block) const;
  /// Cursor after the implicit left moves owed at `block`.
  BatCursor logical_cursor(Height block) const;
  const BatCursor& stored_cursor() const { return cursor_; }

  const std::vector<BidRecord>& bidders() const { return bidders_; }
  std::optional<std::size_t> bidder_index(IdentityId id) const;
  const std::vector<RightEntry>& right_log() const { return right_log_; }
  const std::vector<IdentityId>& reward_list() const { return reward_list_; }
  std::optional<std::size_t> winner() const { return winner_; }
  std::int64_t winning_bid() const { return winning_bid_; }
  Outcome outcome() const { return outcome_; }
  /// Countdown offset at which the first valid P0/P1 bid landed.
  std::int64_t concluded_offset() const { return concluded_offset_; }

  /// Fake bidders and beacon of the current P3 round once materialized.
  const std::optional<crypto::Digest>& round_rho() const { return rho_; }
  const std::vector<std::size_t>& fake_set() const { return fake_set_; }
  const std::map<std::size_t, std::int64_t>& disclosures() const { return disclosures_; }
  std::optional<std::size_t> fake_claim() const { return fake_claim_; }
  /// Leaf values that ended a P3 round as fake maxima.
  const std::vector<std::int64_t>& fake_leaves() const { return fake_leaves_; }

 private:
  using CallResult = simchain::CallResult;
  using Args = std::vector<simchain::Arg>;

  struct Move {
    IdentityId caller;
    Height block = 0;
    int t = 0;
    Interval from;
    BatCursor after;
    Amount deposit = 0;
  };

  bool tree_variant() const { return config_.variant == Variant::P2 || config_.variant == Variant::P3; }
  bool in_registration(Height b) const { return b > deploy_height_ && b <= reg_end_; }
  bool in_reveal(Height b) const { return b > path_end() && b <= reveal_end(); }
  bool in_verify(Height b) const { return b > reveal_end() && b <= verify_end(); }
  std::int64_t leaf_value() const;
  bool too_few_bidders() const {
    return config_.variant == Variant::P3 && static_cast<std::size_t>(config_.fake_count) > bidders_.size() &&
           round_ == 1;
  }
  void ensure_round(simchain::CallContext& ctx);

  CallResult register_bidder(simchain::CallContext& ctx, const Args& args);
  CallResult countdown_bid(simchain::CallContext& ctx, const Args& args);
  CallResult reveal_bid(simchain::CallContext& ctx, const Args& args);
  CallResult right(simchain::CallContext& ctx, const Args& args);
  CallResult blame(simchain::CallContext& ctx, const Args& args);
  CallResult fakebid(simchain::CallContext& ctx, const Args& args);
  CallResult settle(simchain::CallContext& ctx, const Args& args);
  CallResult refund(simchain::CallContext& ctx, const Args& args);

  void slash(simchain::CallContext& ctx, std::size_t bidder);
  void return_right_deposits(simchain::CallContext& ctx);
  void finalize(simchain::CallContext& ctx, Outcome outcome);
  void start_traversal(Height anchor, int resume_step, BatCursor cursor);

  AuctionConfig config_;
  std::shared_ptr<const proofs::ProofRegistry> proofs_;
  IdentityId self_{};
  Height deploy_height_ = 0;
  Height reg_end_ = 0;

  std::vector<BidRecord> bidders_;
  std::map<IdentityId, std::size_t> index_;

  std::int64_t m_ = 1;
  int round_ = 1;
  int traversals_ = 1;
  int blames_ = 0;
  Height anchor_ = 0;
  int resume_step_ = 0;
  BatCursor cursor_;
  std::vector<Move> moves_;
  std::vector<RightEntry> right_log_;
  std::vector<std::pair<IdentityId, Amount>> held_;
  std::map<std::pair<int, int>, int> rewarded_per_step_;
  std::vector<IdentityId> reward_list_;

  std::optional<crypto::Digest> rho_;
  std::vector<std::size_t> fake_set_;
  std::map<std::size_t, std::int64_t> disclosures_;
  std::optional<std::size_t> fake_claim_;
  std::vector<std::int64_t> fake_leaves_;

  std::optional<std::size_t> winner_;
  std::int64_t winning_bid_ = 0;
  std::int64_t concluded_offset_ = 0;
  Outcome outcome_ = Outcome::Open;
};

}  // namespace chainlab::auction
