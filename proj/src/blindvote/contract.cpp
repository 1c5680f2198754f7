#include "chainlab/blindvote/contract.hpp"

#include <algorithm>

#include "chainlab/crypto/commitment.hpp"
#include "chainlab/simchain/args.hpp"
#include "chainlab/simchain/chain.hpp"

namespace chainlab::blindvote {

using simchain::CallContext;
using simchain::CallResult;
using simchain::ChainError;
using simchain::Error;
using simchain::arg;
using simchain::expect_arity;

void validate(const VotingConfig& config) {
  if (config.n_max < 0) throw ChainError(Error::BadConfig, "n_max must be non-negative");
  if (config.fee < 0 || config.relay_reward < 0 || config.admin_deposit < 0) {
    throw ChainError(Error::BadConfig, "amounts must be non-negative");
  }
  if (config.fee < 2 * config.relay_reward) throw ChainError(Error::BadConfig, "fee must cover two relay rewards");
  if (config.deadlines[0] < 0) throw ChainError(Error::BadConfig, "t1 must be non-negative");
  for (std::size_t i = 1; i < config.deadlines.size(); ++i) {
    if (config.deadlines[i] <= config.deadlines[i - 1]) {
      throw ChainError(Error::BadConfig, "deadlines must be strictly increasing");
    }
  }
}

simchain::Schedule voting_schedule(const VotingConfig& config) {
  std::vector<simchain::Window> windows;
  windows.push_back({0, config.deadlines[0]});
  for (std::size_t i = 1; i < config.deadlines.size(); ++i) {
    windows.push_back({config.deadlines[i - 1] + 1, config.deadlines[i]});
  }
  return simchain::Schedule(std::move(windows));
}

crypto::Digest offchain_request_digest(IdentityId contract, const crypto::BigInt& blinded) {
  crypto::HashWriter w;
  w.add(std::string_view("blindvote.offchain-request")).add(contract.value).add(blinded);
  return w.digest();
}

VotingContract::VotingContract(IdentityId admin, VotingConfig config)
    : admin_(admin), config_(config), reducer_([](Tally& t, const std::string& v) { ++t[v]; }) {
  validate(config_);
  schedule_ = voting_schedule(config_);
}

void VotingContract::on_deploy(IdentityId self, IdentityId deployer, Amount attached, Height height) {
  if (deployer != admin_) throw ChainError(Error::NotAdmin);
  if (attached != config_.admin_deposit) throw ChainError(Error::WrongDeposit);
  if (height >= config_.deadlines[0]) throw ChainError(Error::BadConfig, "registration already closed");
  self_ = self;
}

bool VotingContract::window(Height h, std::size_t step) const { return simchain::in_window(h, step - 1, schedule_); }

std::int64_t VotingContract::valid_voters() const {
  return std::count_if(voters_.begin(), voters_.end(),
                       [](const auto& kv) { return kv.second.approved && kv.second.registered; });
}

bool VotingContract::is_valid_voter(IdentityId id) const {
  auto it = voters_.find(id);
  return it != voters_.end() && it->second.approved && it->second.registered;
}

Amount VotingContract::remaining_deposit() const {
  const Amount paid = cancelled() ? relay_paid_before_cancel_ : relay_paid_;
  return config_.admin_deposit - paid;
}

Amount VotingContract::cancellation_refund() const {
  const std::int64_t n = valid_voters();
  return config_.fee + (n > 0 ? remaining_deposit() / n : 0);
}

CallResult VotingContract::execute(CallContext& ctx, const simchain::Call& call) {
  const std::string& fn = call.function;
  const Args& a = call.args;
  if (fn == "step4_refund") return cancellation_refund_call(ctx, a, Cancellation::RefusedSignature);
  if (fn == "step5_refund") return cancellation_refund_call(ctx, a, Cancellation::OverCommit);
  if (fn == "step1_refund") return step1_refund(ctx, a);
  if (cancelled()) return CallResult::reject(Error::Cancelled);
  if (fn == "approve") return approve(ctx, a);
  if (fn == "register") return register_voter(ctx, a);
  if (fn == "initiate") return initiate(ctx, a);
  if (fn == "delegate") return delegate(ctx, a);
  if (fn == "blind_sign") return blind_sign(ctx, a);
  if (fn == "commit") return commit(ctx, a);
  if (fn == "commit_premature") return commit_premature(ctx, a);
  if (fn == "reveal") return reveal(ctx, a);
  if (fn == "report_refused_signature") return report_refused_signature(ctx, a);
  if (fn == "admin_refund") return admin_refund(ctx, a);
  if (fn == "voter_refund") return voter_refund(ctx, a);
  if (fn == "report") return report(ctx, a);
  return CallResult::reject(Error::UnknownFunction);
}

CallResult VotingContract::approve(CallContext& ctx, const Args& args) {
  expect_arity(args, 1);
  const IdentityId voter = arg<IdentityId>(args, 0);
  if (!window(ctx.block(), 1)) return CallResult::reject(Error::WindowClosed);
  if (ctx.sender() != admin_) return CallResult::reject(Error::NotAdmin);
  VoterRecord* record = nullptr;
  if (auto it = voters_.find(voter); it != voters_.end()) record = &it->second;
  if (record && record->approved) return CallResult::reject(Error::AlreadyApproved);
  if (approved_count_ >= config_.n_max) return CallResult::reject(Error::TooManyVoters);
  voters_[voter].approved = true;
  ++approved_count_;
  return CallResult::ok();
}

CallResult VotingContract::register_voter(CallContext& ctx, const Args& args) {
  expect_arity(args, 0);
  if (!window(ctx.block(), 1)) return CallResult::reject(Error::WindowClosed);
  if (ctx.value() != config_.fee) return CallResult::reject(Error::WrongDeposit);
  auto it = voters_.find(ctx.sender());
  if (it != voters_.end() && it->second.registered) return CallResult::reject(Error::AlreadyRegistered);
  voters_[ctx.sender()].registered = true;
  return CallResult::ok();
}

CallResult VotingContract::initiate(CallContext& ctx, const Args& args) {
  expect_arity(args, 2);
  crypto::PublicKey key{arg<crypto::BigInt>(args, 0), arg<crypto::BigInt>(args, 1)};
  if (!window(ctx.block(), 2)) return CallResult::reject(Error::WindowClosed);
  if (ctx.sender() != admin_) return CallResult::reject(Error::NotAdmin);
  if (admin_key_) return CallResult::reject(Error::KeyAlreadySet);
  if (!crypto::plausible_public_key(key)) return CallResult::reject(Error::BadArguments, "implausible key");
  admin_key_ = std::move(key);
  return CallResult::ok();
}

CallResult VotingContract::delegate(CallContext& ctx, const Args& args) {
  expect_arity(args, 1);
  const crypto::BigInt& blinded = arg<crypto::BigInt>(args, 0);
  if (!window(ctx.block(), 3)) return CallResult::reject(Error::WindowClosed);
  if (!is_valid_voter(ctx.sender())) return CallResult::reject(Error::NotVoter);
  if (!admin_key_) return CallResult::reject(Error::NoAdminKey);
  VoterRecord& record = voters_.at(ctx.sender());
  if (record.blinded) return CallResult::reject(Error::AlreadyDelegated);
  if (blinded < 0 || blinded >= admin_key_->modulus) return CallResult::reject(Error::BadArguments, "out of range");
  record.blinded = blinded;
  return CallResult::ok();
}

CallResult VotingContract::blind_sign(CallContext& ctx, const Args& args) {
  expect_arity(args, 2);
  const IdentityId voter = arg<IdentityId>(args, 0);
  const crypto::BigInt& signature = arg<crypto::BigInt>(args, 1);
  if (!window(ctx.block(), 4)) return CallResult::reject(Error::WindowClosed);
  if (ctx.sender() != admin_) return CallResult::reject(Error::NotAdmin);
  auto it = voters_.find(voter);
  if (it == voters_.end() || !it->second.blinded) return CallResult::reject(Error::NoDelegation);
  VoterRecord& record = it->second;
  if (record.reported) return CallResult::reject(Error::NotEligible);
  if (record.blind_signature) return CallResult::reject(Error::AlreadySigned);
  if (signature < 0 || signature >= admin_key_->modulus || !crypto::verify(*record.blinded, signature, *admin_key_)) {
    return CallResult::reject(Error::InvalidSignature);
  }
  record.blind_signature = signature;
  return CallResult::ok();
}

CallResult VotingContract::commit(CallContext& ctx, const Args& args) {
  expect_arity(args, 5);
  const crypto::PublicKey voter_key{arg<crypto::BigInt>(args, 0), arg<crypto::BigInt>(args, 1)};
  const crypto::BigInt& s = arg<crypto::BigInt>(args, 2);
  const crypto::Digest& c = arg<crypto::Digest>(args, 3);
  const crypto::BigInt& sc = arg<crypto::BigInt>(args, 4);
  if (config_.variant != Variant::Standard) return CallResult::reject(Error::WrongVariant);
  if (!window(ctx.block(), 5)) return CallResult::reject(Error::WindowClosed);
  if (!admin_key_) return CallResult::reject(Error::NoAdminKey);
  if (!crypto::plausible_public_key(voter_key)) return CallResult::reject(Error::BadVoterKey);
  const crypto::BigInt h = crypto::hash_public_key(voter_key, admin_key_->modulus);
  if (s < 0 || s >= admin_key_->modulus || !crypto::verify(h, s, *admin_key_)) {
    return CallResult::reject(Error::BadAdminSig);
  }
  const crypto::BigInt c_value = crypto::to_bigint(c);
  if (c_value <= 1) return CallResult::reject(Error::BadCommitment);
  if (sc < 0 || sc >= voter_key.modulus || crypto::powm(sc, voter_key.exponent, voter_key.modulus) != c_value % voter_key.modulus) {
    return CallResult::reject(Error::BadSelfSig);
  }
  auto key = std::make_tuple(voter_key.modulus, voter_key.exponent, s);
  if (used_keys_.count(key) != 0) return CallResult::reject(Error::Reuse);
  if (commitments_.count(c) != 0) return CallResult::reject(Error::BadCommitment, "duplicate commitment");
  CallResult result = accept_commitment(ctx, c);
  used_keys_.insert(std::move(key));
  return result;
}

CallResult VotingContract::commit_premature(CallContext& ctx, const Args& args) {
  expect_arity(args, 2);
  const crypto::BigInt& s = arg<crypto::BigInt>(args, 0);
  const crypto::Digest& c = arg<crypto::Digest>(args, 1);
  if (config_.variant != Variant::Premature) return CallResult::reject(Error::WrongVariant);
  if (!window(ctx.block(), 5)) return CallResult::reject(Error::WindowClosed);
  if (!admin_key_) return CallResult::reject(Error::NoAdminKey);
  const crypto::BigInt c_value = crypto::to_bigint(c);
  if (c_value <= 1) return CallResult::reject(Error::BadCommitment);
  if (s < 0 || s >= admin_key_->modulus || !crypto::verify(c_value % admin_key_->modulus, s, *admin_key_)) {
    return CallResult::reject(Error::BadAdminSig);
  }
  if (used_signatures_.count(s) != 0 || commitments_.count(c) != 0) return CallResult::reject(Error::Reuse);
  CallResult result = accept_commitment(ctx, c);
  used_signatures_.insert(s);
  return result;
}

CallResult VotingContract::accept_commitment(CallContext& ctx, const crypto::Digest& c) {
  const Amount reward = std::min(config_.relay_reward, ctx.available());
  ctx.pay(ctx.sender(), reward);
  relay_paid_ += reward;
  if (accepted_commits_ >= valid_voters()) {
    // More valid commitments than voters: the admin issued extra signatures.
    relay_paid_before_cancel_ = relay_paid_;
    cancellation_ = Cancellation::OverCommit;
    return CallResult::penalize(Error::TooManyCommits, "vote cancelled");
  }
  commitments_.emplace(c, CommitmentRecord{});
  ++accepted_commits_;
  return CallResult::ok();
}

CallResult VotingContract::reveal(CallContext& ctx, const Args& args) {
  expect_arity(args, 3);
  const crypto::Digest& c = arg<crypto::Digest>(args, 0);
  const std::string& vote = arg<std::string>(args, 1);
  const crypto::Digest& nonce = arg<crypto::Digest>(args, 2);
  if (!window(ctx.block(), 6)) return CallResult::reject(Error::WindowClosed);
  auto it = commitments_.find(c);
  if (it == commitments_.end()) return CallResult::reject(Error::UnknownCommitment);
  if (it->second.revealed) return CallResult::reject(Error::AlreadyRevealed);
  if (!crypto::commit_open(c, vote, nonce)) return CallResult::reject(Error::BadOpening);
  it->second.revealed = true;
  reducer_(tally_, vote);
  const Amount reward = std::min(config_.relay_reward, ctx.available());
  ctx.pay(ctx.sender(), reward);
  relay_paid_ += reward;
  return CallResult::ok();
}

CallResult VotingContract::step1_refund(CallContext& ctx, const Args& args) {
  expect_arity(args, 0);
  if (ctx.block() <= config_.deadlines[0]) return CallResult::reject(Error::WindowClosed);
  auto it = voters_.find(ctx.sender());
  if (it == voters_.end() || !it->second.registered || it->second.approved) {
    return CallResult::reject(Error::NotEligible);
  }
  if (it->second.refunded) return CallResult::reject(Error::AlreadyRefunded);
  it->second.refunded = true;
  ctx.pay(ctx.sender(), config_.fee);
  return CallResult::ok();
}

CallResult VotingContract::report_refused_signature(CallContext& ctx, const Args& args) {
  expect_arity(args, 1);
  const IdentityId voter = arg<IdentityId>(args, 0);
  if (!window(ctx.block(), 5)) return CallResult::reject(Error::WindowClosed);
  auto it = voters_.find(voter);
  if (it == voters_.end() || !is_valid_voter(voter) || !it->second.blinded) {
    return CallResult::reject(Error::NoDelegation);
  }
  if (it->second.reported || it->second.blind_signature) return CallResult::reject(Error::NotEligible);
  relay_paid_before_cancel_ = relay_paid_;
  cancellation_ = Cancellation::RefusedSignature;
  return CallResult::ok("vote cancelled");
}

CallResult VotingContract::cancellation_refund_call(CallContext& ctx, const Args& args, Cancellation cause) {
  expect_arity(args, 0);
  if (cancellation_ != cause) return CallResult::reject(Error::NotCancelled);
  auto it = voters_.find(ctx.sender());
  if (it == voters_.end() || !is_valid_voter(ctx.sender()) || it->second.reported) {
    return CallResult::reject(Error::NotEligible);
  }
  if (it->second.refunded) return CallResult::reject(Error::AlreadyRefunded);
  const Amount amount = std::min(cancellation_refund(), ctx.available());
  it->second.refunded = true;
  ctx.pay(ctx.sender(), amount);
  return CallResult::ok();
}

bool VotingContract::voter_refund_eligible(IdentityId, const VoterRecord& record) const {
  if (!record.approved || !record.registered || record.reported || record.refunded) return false;
  return config_.offchain_signing || record.blinded.has_value();
}

Amount VotingContract::outstanding_claims() const {
  Amount claims = 0;
  for (const auto& [id, record] : voters_) {
    if (record.refunded) continue;
    if (record.registered && !record.approved) claims += config_.fee;
    if (voter_refund_eligible(id, record)) claims += config_.fee - 2 * config_.relay_reward;
  }
  return claims;
}

CallResult VotingContract::admin_refund(CallContext& ctx, const Args& args) {
  expect_arity(args, 0);
  if (ctx.sender() != admin_) return CallResult::reject(Error::NotAdmin);
  if (ctx.block() <= config_.deadlines[5]) return CallResult::reject(Error::WindowClosed);
  if (admin_refunded_) return CallResult::reject(Error::AlreadyRefunded);
  const Amount residual = std::max<Amount>(0, ctx.available() - outstanding_claims());
  const Amount amount = std::min(config_.admin_deposit, residual);
  admin_refunded_ = true;
  ctx.pay(admin_, amount);
  // Forfeited deposits and unspent relay budget.
  ctx.burn(residual - amount);
  return CallResult::ok();
}

CallResult VotingContract::voter_refund(CallContext& ctx, const Args& args) {
  expect_arity(args, 0);
  if (ctx.block() <= config_.deadlines[5]) return CallResult::reject(Error::WindowClosed);
  auto it = voters_.find(ctx.sender());
  if (it == voters_.end() || !is_valid_voter(ctx.sender())) return CallResult::reject(Error::NotEligible);
  if (it->second.refunded) return CallResult::reject(Error::AlreadyRefunded);
  if (!voter_refund_eligible(ctx.sender(), it->second)) return CallResult::reject(Error::NotEligible);
  it->second.refunded = true;
  ctx.pay(ctx.sender(), config_.fee - 2 * config_.relay_reward);
  return CallResult::ok();
}

CallResult VotingContract::report(CallContext& ctx, const Args& args) {
  expect_arity(args, 3);
  const IdentityId voter = arg<IdentityId>(args, 0);
  const crypto::BigInt& first_request = arg<crypto::BigInt>(args, 1);
  const crypto::Digest& sigma = arg<crypto::Digest>(args, 2);
  if (ctx.sender() != admin_) return CallResult::reject(Error::NotAdmin);
  if (ctx.block() <= config_.deadlines[1] || ctx.block() > config_.deadlines[3]) {
    return CallResult::reject(Error::WindowClosed);
  }
  auto it = voters_.find(voter);
  if (it == voters_.end() || !is_valid_voter(voter)) return CallResult::reject(Error::NotVoter);
  VoterRecord& record = it->second;
  if (record.reported) return CallResult::reject(Error::AlreadyRefunded, "already confiscated");
  if (!record.blinded || *record.blinded == first_request) return CallResult::reject(Error::NoDelegation);
  if (record.blind_signature) return CallResult::reject(Error::AlreadySigned);
  if (!ctx.chain().identity_verify(voter, offchain_request_digest(self_, first_request), sigma)) {
    return CallResult::reject(Error::BadAuthSignature);
  }
  record.reported = true;
  // The relay budget stays in the contract for the signature already issued.
  ctx.burn(config_.fee - 2 * config_.relay_reward);
  return CallResult::ok("voter deposit confiscated");
}

void VotingContract::digest_into(crypto::HashWriter& w) const {
  w.add(std::string_view("blindvote")).add(admin_.value).add(static_cast<std::int64_t>(cancellation_));
  if (admin_key_) w.add(admin_key_->modulus).add(admin_key_->exponent);
  for (const auto& [id, r] : voters_) {
    const unsigned flags = (r.approved ? 1u : 0u) | (r.registered ? 2u : 0u) | (r.refunded ? 4u : 0u) |
                           (r.reported ? 8u : 0u) | (r.blinded ? 16u : 0u) | (r.blind_signature ? 32u : 0u);
    w.add(id.value).add(static_cast<std::uint64_t>(flags));
    w.add(r.blinded.value_or(0)).add(r.blind_signature.value_or(0));
  }
  for (const auto& [c, rec] : commitments_) w.add(c).add(static_cast<std::uint64_t>(rec.revealed));
  for (const auto& [vote, count] : tally_) w.add(std::string_view(vote)).add(count);
  w.add(accepted_commits_).add(relay_paid_).add(relay_paid_before_cancel_);
  w.add(static_cast<std::uint64_t>(admin_refunded_));
}

}  // namespace chainlab::blindvote
