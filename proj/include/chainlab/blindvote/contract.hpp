#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>

#include "chainlab/crypto/rsa.hpp"
#include "chainlab/simchain/contract.hpp"
#include "chainlab/simchain/schedule.hpp"

namespace chainlab::blindvote {

using simchain::Amount;
using simchain::Height;
using simchain::IdentityId;

enum class Variant {
  Standard,
  /// Voters get the admin signature directly on their commitment.
  Premature,
};

struct VotingConfig {
  std::int64_t n_max = 0;
  Amount fee = 0;
  Amount relay_reward = 0;
  Amount admin_deposit = 0;
  /// t1 < t2 < ... < t6.
  std::array<Height, 6> deadlines{};
  Variant variant = Variant::Standard;
  /// Steps 3 and 4 normally happen off-chain; a registered voter that never
  /// delegates on-chain keeps its deposit.
  bool offchain_signing = false;
};

/// Throws ChainError(BadConfig).
void validate(const VotingConfig& config);

/// Step windows: step 1 is [0, t1], step j is [t_{j-1} + 1, t_j].
simchain::Schedule voting_schedule(const VotingConfig& config);

struct VoterRecord {
  bool approved = false;
  bool registered = false;
  std::optional<crypto::BigInt> blinded;
  std::optional<crypto::BigInt> blind_signature;
  bool refunded = false;
  /// Caught demanding a second signature; deposit confiscated.
  bool reported = false;
};

enum class Cancellation { None, RefusedSignature, OverCommit };

struct CommitmentRecord {
  bool revealed = false;
};

using Tally = std::map<std::string, std::int64_t>;
using TallyReducer = std::function<void(Tally&, const std::string&)>;

/// Message a voter signs with its chain identity when requesting an
/// off-chain blind signature.
crypto::Digest offchain_request_digest(IdentityId contract, const crypto::BigInt& blinded);

class VotingContract final : public simchain::Contract {
 public:
  VotingContract(IdentityId admin, VotingConfig config);

  std::string_view kind() const override { return "blindvote"; }
  void on_deploy(IdentityId self, IdentityId deployer, Amount attached, Height height) override;
  simchain::CallResult execute(simchain::CallContext& ctx, const simchain::Call& call) override;
  void digest_into(crypto::HashWriter& w) const override;

  void set_reducer(TallyReducer reducer) { reducer_ = std::move(reducer); }

  const VotingConfig& config() const { return config_; }
  IdentityId admin() const { return admin_; }
  const std::optional<crypto::PublicKey>& admin_key() const { return admin_key_; }
  const std::map<IdentityId, VoterRecord>& voters() const { return voters_; }
  const std::map<crypto::Digest, CommitmentRecord>& commitments() const { return commitments_; }
  const Tally& tally() const { return tally_; }
  Cancellation cancellation() const { return cancellation_; }
  bool cancelled() const { return cancellation_ != Cancellation::None; }
  /// Approved and registered voters; fixed once step 1 closes.
  std::int64_t valid_voters() const;
  bool is_valid_voter(IdentityId id) const;
  std::int64_t accepted_commits() const { return accepted_commits_; }
  Amount relay_rewards_paid() const { return relay_paid_; }
  /// delta' = delta minus relay rewards paid before cancellation.
  Amount remaining_deposit() const;
  /// f + floor(delta' / n) for a cancelled vote.
  Amount cancellation_refund() const;
  bool admin_refunded() const { return admin_refunded_; }

 private:
  using CallResult = simchain::CallResult;
  using Args = std::vector<simchain::Arg>;

  bool window(Height h, std::size_t step) const;
  CallResult approve(simchain::CallContext& ctx, const Args& args);
  CallResult register_voter(simchain::CallContext& ctx, const Args& args);
  CallResult initiate(simchain::CallContext& ctx, const Args& args);
  CallResult delegate(simchain::CallContext& ctx, const Args& args);
  CallResult blind_sign(simchain::CallContext& ctx, const Args& args);
  CallResult commit(simchain::CallContext& ctx, const Args& args);
  CallResult commit_premature(simchain::CallContext& ctx, const Args& args);
  CallResult accept_commitment(simchain::CallContext& ctx, const crypto::Digest& c);
  CallResult reveal(simchain::CallContext& ctx, const Args& args);
  CallResult step1_refund(simchain::CallContext& ctx, const Args& args);
  CallResult report_refused_signature(simchain::CallContext& ctx, const Args& args);
  CallResult cancellation_refund_call(simchain::CallContext& ctx, const Args& args, Cancellation cause);
  CallResult admin_refund(simchain::CallContext& ctx, const Args& args);
  CallResult voter_refund(simchain::CallContext& ctx, const Args& args);
  CallResult report(simchain::CallContext& ctx, const Args& args);

  bool voter_refund_eligible(IdentityId id, const VoterRecord& record) const;
  Amount outstanding_claims() const;

  IdentityId admin_;
  IdentityId self_{};
  VotingConfig config_;
  simchain::Schedule schedule_;
  std::optional<crypto::PublicKey> admin_key_;
  std::map<IdentityId, VoterRecord> voters_;
  std::int64_t approved_count_ = 0;
  std::map<crypto::Digest, CommitmentRecord> commitments_;
  std::set<std::tuple<crypto::BigInt, crypto::BigInt, crypto::BigInt>> used_keys_;
  std::set<crypto::BigInt> used_signatures_;
  Tally tally_;
  TallyReducer reducer_;
  std::int64_t accepted_commits_ = 0;
  Amount relay_paid_ = 0;
  Amount relay_paid_before_cancel_ = 0;
  Cancellation cancellation_ = Cancellation::None;
  bool admin_refunded_ = false;
};

}  // namespace chainlab::blindvote
