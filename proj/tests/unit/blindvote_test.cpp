#include <gtest/gtest.h>

#include <memory>

#include "chainlab/blindvote/contract.hpp"
#include "chainlab/blindvote/offchain.hpp"
#include "chainlab/crypto/commitment.hpp"
#include "chainlab/crypto/rng.hpp"
#include "chainlab/crypto/rsa.hpp"
#include "chainlab/simchain/chain.hpp"

namespace bv = chainlab::blindvote;
namespace cr = chainlab::crypto;
namespace sc = chainlab::simchain;
using cr::BigInt;
using sc::Error;
using sc::IdentityId;
using sc::TxStatus;

namespace {

bv::VotingConfig config(std::int64_t n_max = 2) {
  bv::VotingConfig c;
  c.n_max = n_max;
  c.fee = 100;
  c.relay_reward = 10;
  c.admin_deposit = 500;
  c.deadlines = {2, 4, 6, 8, 10, 12};
  return c;
}

// Windows: step 1 blocks 0..2, step j blocks 2j-1..2j.
class Vote {
 public:
  explicit Vote(bv::VotingConfig c = config()) : key_(cr::keypair_from_primes(61, 53, 17)), rng_(3, "vote") {
    admin_ = party("admin");
    voter_ = party("voter");
    outsider_ = party("outsider");
    relay_ = party("relay");
    contract_ = chain_.deploy(admin_, std::make_unique<bv::VotingContract>(admin_, c),
                              sc::CostModel::blind_vote_reference(), c.admin_deposit);
    voter_key_ = cr::keygen(32, rng_);
  }

  IdentityId party(std::string label) {
    const IdentityId id = chain_.create_identity(sc::PrincipalId{chain_.identities().size()}, false, label);
    chain_.mint(id, 10000);
    return id;
  }

  void before(sc::Height block) {
    if (chain_.height() >= block) throw std::logic_error("block already passed");
    chain_.advance_to(block - 1);
  }
  void queue(IdentityId sender, sc::Call call, sc::Amount value = 0) {
    chain_.submit(sender, contract_, std::move(call), value);
  }
  sc::Transaction at(sc::Height block, IdentityId sender, sc::Call call, sc::Amount value = 0) {
    before(block);
    queue(sender, std::move(call), value);
    return chain_.advance_block().back();
  }

  void enrol() {
    before(1);
    queue(admin_, {"approve", {voter_}});
    queue(voter_, {"register", {}}, 100);
    for (const auto& tx : chain_.advance_block()) ASSERT_EQ(tx.status, TxStatus::Accepted);
  }

  // Steps 2 and 3: admin key on chain, voter's blinded key hash delegated.
  void delegate() {
    ASSERT_EQ(at(3, admin_, {"initiate", {key_.modulus, key_.public_exponent}}).status, TxStatus::Accepted);
    h_ = cr::hash_public_key(voter_key_.public_key(), key_.modulus);
    r_ = cr::random_unit(key_.modulus, rng_);
    blinded_ = cr::blind(h_, r_, key_.public_key());
    ASSERT_EQ(at(5, voter_, {"delegate", {blinded_}}).status, TxStatus::Accepted);
  }

  sc::Call commit_call(const std::string& vote) {
    const BigInt s = cr::unblind(cr::sign(blinded_, key_), r_, key_.modulus);
    nonce_ = rng_.next_digest();
    commitment_ = cr::commit_message(vote, nonce_);
    const BigInt sc_sig = cr::sign(cr::to_bigint(commitment_) % voter_key_.modulus, voter_key_);
    return {"commit", {voter_key_.modulus, voter_key_.public_exponent, s, commitment_, sc_sig}};
  }

  const bv::VotingContract& contract() const { return chain_.contract_as<bv::VotingContract>(contract_); }

  sc::Chain chain_;
  cr::RsaKeyPair key_;
  cr::RsaKeyPair voter_key_;
  cr::DeterministicRng rng_;
  IdentityId admin_, voter_, outsider_, relay_, contract_;
  BigInt h_, r_, blinded_;
  cr::Nonce nonce_{};
  cr::Digest commitment_{};
};

}  // namespace

TEST(VotingConfig, Validation) {
  auto bad = [](auto mutate) {
    bv::VotingConfig c = config();
    mutate(c);
    EXPECT_THROW(bv::validate(c), sc::ChainError);
  };
  bad([](bv::VotingConfig& c) { c.n_max = -1; });
  bad([](bv::VotingConfig& c) { c.fee = 19; });
  bad([](bv::VotingConfig& c) { c.deadlines[3] = c.deadlines[2]; });
  bad([](bv::VotingConfig& c) { c.deadlines[0] = -1; });
  EXPECT_NO_THROW(bv::validate(config()));
}

TEST(VotingConfig, ScheduleWindows) {
  const auto s = bv::voting_schedule(config());
  ASSERT_EQ(s.size(), 6u);
  EXPECT_EQ(s[0].open, 0);
  EXPECT_EQ(s[0].close, 2);
  EXPECT_EQ(s[1].open, 3);
  EXPECT_EQ(s[5].close, 12);
  EXPECT_EQ(s.active_step(7), 3u);
  EXPECT_EQ(s.active_step(13), std::nullopt);
}

TEST(VotingContract, DeployChecks) {
  sc::Chain chain;
  const auto admin = chain.create_identity();
  const auto other = chain.create_identity();
  chain.mint(admin, 1000);
  chain.mint(other, 1000);
  const auto expect_code = [&](IdentityId sender, sc::Amount value, Error code) {
    try {
      chain.deploy(sender, std::make_unique<bv::VotingContract>(admin, config()),
                   sc::CostModel::blind_vote_reference(), value);
      ADD_FAILURE();
    } catch (const sc::ChainError& e) {
      EXPECT_EQ(e.code(), code);
    }
  };
  expect_code(admin, 499, Error::WrongDeposit);
  expect_code(other, 500, Error::NotAdmin);
  EXPECT_EQ(chain.balance(admin), 1000);
}

TEST(VotingContract, StepOneErrors) {
  Vote v(config(1));
  v.before(1);
  v.queue(v.outsider_, {"approve", {v.voter_}});
  v.queue(v.admin_, {"approve", {v.voter_}});
  v.queue(v.admin_, {"approve", {v.voter_}});
  v.queue(v.admin_, {"approve", {v.outsider_}});
  v.queue(v.voter_, {"register", {}}, 99);
  v.queue(v.voter_, {"register", {}}, 100);
  v.queue(v.voter_, {"register", {}}, 100);
  auto block = v.chain_.advance_block();
  EXPECT_EQ(block[0].error, Error::NotAdmin);
  EXPECT_EQ(block[1].status, TxStatus::Accepted);
  EXPECT_EQ(block[2].error, Error::AlreadyApproved);
  EXPECT_EQ(block[3].error, Error::TooManyVoters);
  EXPECT_EQ(block[4].error, Error::WrongDeposit);
  EXPECT_EQ(block[5].status, TxStatus::Accepted);
  EXPECT_EQ(block[6].error, Error::AlreadyRegistered);
  EXPECT_EQ(v.at(3, v.outsider_, {"register", {}}, 100).error, Error::WindowClosed);
  EXPECT_EQ(v.contract().valid_voters(), 1);
}

TEST(VotingContract, UnapprovedRegistrationRefund) {
  Vote v;
  v.enrol();
  EXPECT_EQ(v.at(2, v.outsider_, {"register", {}}, 100).status, TxStatus::Accepted);
  EXPECT_EQ(v.at(3, v.voter_, {"step1_refund", {}}).error, Error::NotEligible);
  EXPECT_EQ(v.at(4, v.outsider_, {"step1_refund", {}}).status, TxStatus::Accepted);
  EXPECT_EQ(v.at(5, v.outsider_, {"step1_refund", {}}).error, Error::AlreadyRefunded);
  EXPECT_EQ(v.chain_.balance(v.outsider_), 10000);
}

TEST(VotingContract, HonestSingleVoter) {
  Vote v;
  v.enrol();
  EXPECT_EQ(v.at(2, v.admin_, {"initiate", {BigInt(3234), BigInt(17)}}).error, Error::WindowClosed);
  v.delegate();
  EXPECT_EQ(v.at(6, v.outsider_, {"delegate", {v.blinded_}}).error, Error::NotVoter);

  const BigInt good = cr::sign(v.blinded_, v.key_);
  v.before(7);
  v.queue(v.voter_, {"blind_sign", {v.voter_, good}});
  v.queue(v.admin_, {"blind_sign", {v.voter_, (good + 1) % v.key_.modulus}});
  v.queue(v.admin_, {"blind_sign", {v.voter_, good}});
  v.queue(v.admin_, {"blind_sign", {v.voter_, good}});
  auto block = v.chain_.advance_block();
  EXPECT_EQ(block[0].error, Error::NotAdmin);
  EXPECT_EQ(block[1].error, Error::InvalidSignature);
  EXPECT_EQ(block[2].status, TxStatus::Accepted);
  EXPECT_EQ(block[3].error, Error::AlreadySigned);

  const auto call = v.commit_call("yes");
  const auto relay_before = v.chain_.balance(v.relay_);
  EXPECT_EQ(v.at(9, v.relay_, call).status, TxStatus::Accepted);
  EXPECT_EQ(v.chain_.balance(v.relay_), relay_before + 10);
  EXPECT_EQ(v.at(10, v.relay_, call).error, Error::Reuse);

  v.before(11);
  v.queue(v.relay_, {"reveal", {v.commitment_, std::string("no"), v.nonce_}});
  v.queue(v.relay_, {"reveal", {v.commitment_, std::string("yes"), v.nonce_}});
  v.queue(v.relay_, {"reveal", {v.commitment_, std::string("yes"), v.nonce_}});
  block = v.chain_.advance_block();
  EXPECT_EQ(block[0].error, Error::BadOpening);
  EXPECT_EQ(block[1].status, TxStatus::Accepted);
  EXPECT_EQ(block[2].error, Error::AlreadyRevealed);
  EXPECT_EQ(v.contract().tally(), (bv::Tally{{"yes", 1}}));

  EXPECT_EQ(v.at(12, v.voter_, {"voter_refund", {}}).error, Error::WindowClosed);
  const auto voter_before = v.chain_.balance(v.voter_);
  const auto admin_before = v.chain_.balance(v.admin_);
  v.before(13);
  v.queue(v.voter_, {"voter_refund", {}});
  v.queue(v.admin_, {"admin_refund", {}});
  v.queue(v.admin_, {"admin_refund", {}});
  block = v.chain_.advance_block();
  EXPECT_EQ(block[0].status, TxStatus::Accepted);
  EXPECT_EQ(block[2].error, Error::AlreadyRefunded);
  const auto fees = [&](const sc::Transaction& tx) { return tx.fee; };
  EXPECT_EQ(v.chain_.balance(v.voter_), voter_before + 80 - fees(block[0]));
  // Relay rewards come out of the voter fee, so the deposit returns whole.
  EXPECT_EQ(v.chain_.balance(v.admin_), admin_before + 500 - fees(block[1]) - fees(block[2]));
  EXPECT_EQ(v.chain_.balance(v.contract_), 0);
  EXPECT_EQ(v.chain_.total_supply(), v.chain_.minted());
}

TEST(VotingContract, CommitChecks) {
  Vote v;
  v.enrol();
  v.delegate();
  ASSERT_EQ(v.at(7, v.admin_, {"blind_sign", {v.voter_, cr::sign(v.blinded_, v.key_)}}).status,
            TxStatus::Accepted);
  auto call = v.commit_call("yes");
  EXPECT_EQ(v.at(8, v.relay_, call).error, Error::WindowClosed);
  auto wrong_sig = call;
  wrong_sig.args[2] = (std::get<BigInt>(call.args[2]) + 1) % v.key_.modulus;
  auto wrong_self = call;
  wrong_self.args[4] = (std::get<BigInt>(call.args[4]) + 1) % v.voter_key_.modulus;
  auto even_key = call;
  even_key.args[0] = v.voter_key_.modulus + 1;
  v.before(9);
  v.queue(v.relay_, wrong_sig);
  v.queue(v.relay_, wrong_self);
  v.queue(v.relay_, even_key);
  v.queue(v.relay_, {"commit_premature", {std::get<BigInt>(call.args[2]), v.commitment_}});
  const auto block = v.chain_.advance_block();
  EXPECT_EQ(block[0].error, Error::BadAdminSig);
  EXPECT_EQ(block[1].error, Error::BadSelfSig);
  EXPECT_EQ(block[2].error, Error::BadVoterKey);
  EXPECT_EQ(block[3].error, Error::WrongVariant);
  EXPECT_EQ(v.contract().accepted_commits(), 0);
}

TEST(VotingContract, ExtraSignatureCancels) {
  auto c = config();
  c.variant = bv::Variant::Premature;
  Vote v(c);
  v.enrol();
  v.delegate();
  // Premature signatures sign the commitment directly; forge two from the admin key.
  const auto c1 = cr::commit_message("yes", v.rng_.next_digest());
  const auto c2 = cr::commit_message("no", v.rng_.next_digest());
  const auto sig = [&](const cr::Digest& d) { return cr::sign(cr::to_bigint(d) % v.key_.modulus, v.key_); };
  v.before(9);
  v.queue(v.relay_, {"commit_premature", {sig(c1), c1}});
  v.queue(v.relay_, {"commit_premature", {sig(c1), c1}});
  v.queue(v.relay_, {"commit_premature", {sig(c2), c2}});
  const auto block = v.chain_.advance_block();
  EXPECT_EQ(block[0].status, TxStatus::Accepted);
  EXPECT_EQ(block[1].error, Error::Reuse);
  EXPECT_EQ(block[2].status, TxStatus::Penalized);
  EXPECT_EQ(block[2].error, Error::TooManyCommits);
  EXPECT_EQ(v.contract().cancellation(), bv::Cancellation::OverCommit);
  EXPECT_EQ(v.at(10, v.relay_, {"reveal", {c1, std::string("yes"), cr::Nonce{}}}).error, Error::Cancelled);
  EXPECT_EQ(v.at(11, v.voter_, {"step4_refund", {}}).error, Error::NotCancelled);
  // f + floor((500 - 20) / 1).
  EXPECT_EQ(v.contract().cancellation_refund(), 580);
  const auto before = v.chain_.balance(v.voter_);
  const auto tx = v.at(12, v.voter_, {"step5_refund", {}});
  EXPECT_EQ(tx.status, TxStatus::Accepted);
  EXPECT_EQ(v.chain_.balance(v.voter_), before + 580 - tx.fee);
}

TEST(VotingContract, RefusedSignatureReport) {
  Vote v;
  v.enrol();
  v.delegate();
  EXPECT_EQ(v.at(8, v.relay_, {"report_refused_signature", {v.voter_}}).error, Error::WindowClosed);
  EXPECT_EQ(v.at(9, v.relay_, {"report_refused_signature", {v.outsider_}}).error, Error::NoDelegation);
  EXPECT_EQ(v.at(10, v.relay_, {"report_refused_signature", {v.voter_}}).note, "vote cancelled");
  EXPECT_EQ(v.contract().cancellation(), bv::Cancellation::RefusedSignature);
  EXPECT_EQ(v.contract().cancellation_refund(), 600);
  EXPECT_EQ(v.at(11, v.outsider_, {"step4_refund", {}}).error, Error::NotEligible);
  EXPECT_EQ(v.at(12, v.voter_, {"step4_refund", {}}).status, TxStatus::Accepted);
  EXPECT_EQ(v.at(13, v.voter_, {"step4_refund", {}}).error, Error::AlreadyRefunded);
}

TEST(VotingContract, DoubleDemandReport) {
  auto c = config();
  c.offchain_signing = true;
  Vote v(c);
  v.enrol();
  v.delegate();
  const BigInt first = (v.blinded_ + 1) % v.key_.modulus;
  const auto sigma = v.chain_.identity_sign(v.voter_, bv::offchain_request_digest(v.contract_, first));
  v.before(7);
  v.queue(v.outsider_, {"report", {v.voter_, first, sigma}});
  v.queue(v.admin_, {"report", {v.voter_, v.blinded_, sigma}});
  v.queue(v.admin_, {"report", {v.voter_, first, cr::Digest{}}});
  v.queue(v.admin_, {"report", {v.voter_, first, sigma}});
  const auto block = v.chain_.advance_block();
  EXPECT_EQ(block[0].error, Error::NotAdmin);
  EXPECT_EQ(block[1].error, Error::NoDelegation);
  EXPECT_EQ(block[2].error, Error::BadAuthSignature);
  EXPECT_EQ(block[3].status, TxStatus::Accepted);
  EXPECT_TRUE(v.contract().voters().at(v.voter_).reported);
  EXPECT_EQ(v.at(8, v.admin_, {"blind_sign", {v.voter_, cr::sign(v.blinded_, v.key_)}}).error, Error::NotEligible);
  EXPECT_EQ(v.at(13, v.voter_, {"voter_refund", {}}).error, Error::NotEligible);
}

TEST(OffchainChannel, SignsOnlyTheFirstRequest) {
  sc::Chain chain;
  const auto voter = chain.create_identity();
  const IdentityId contract{42};
  const auto key = cr::keypair_from_primes(61, 53, 17);
  bv::OffchainChannel channel(chain, contract, key);
  const auto sig = [&](const BigInt& x) { return chain.identity_sign(voter, bv::offchain_request_digest(contract, x)); };

  EXPECT_THROW(channel.deliver(voter, 5, sig(6)), sc::ChainError);
  EXPECT_EQ(channel.return_signature(voter), std::nullopt);
  channel.deliver(voter, 5, sig(5));
  EXPECT_EQ(channel.return_signature(voter), cr::sign(5, key));
  channel.deliver(voter, 9, sig(9));
  EXPECT_EQ(channel.return_signature(voter), std::nullopt);
  EXPECT_TRUE(channel.double_demand(voter));
  EXPECT_EQ(channel.evidence(voter)->blinded, 5);
  EXPECT_EQ(channel.messages(), 3u);
}

TEST(OffchainChannel, RefuseAll) {
  sc::Chain chain;
  const auto voter = chain.create_identity();
  bv::OffchainChannel channel(chain, IdentityId{7}, cr::keypair_from_primes(61, 53, 17));
  channel.set_refuse_all(true);
  channel.deliver(voter, 5, chain.identity_sign(voter, bv::offchain_request_digest(IdentityId{7}, 5)));
  EXPECT_EQ(channel.return_signature(voter), std::nullopt);
  EXPECT_FALSE(channel.double_demand(voter));
}
