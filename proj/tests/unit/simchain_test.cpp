#include <gtest/gtest.h>

#include <memory>

#include "chainlab/simchain/args.hpp"
#include "chainlab/simchain/chain.hpp"
#include "chainlab/simchain/schedule.hpp"

namespace sc = chainlab::simchain;
using sc::Amount;
using sc::ChainError;
using sc::Error;
using sc::IdentityId;

namespace {

// Keeps what it is sent, except "echo" which returns value - burn.
class Toy final : public sc::Contract {
 public:
  std::string_view kind() const override { return "toy"; }
  void on_deploy(IdentityId, IdentityId, Amount attached, sc::Height) override {
    if (attached < 0) throw ChainError(Error::WrongDeposit);
  }
  sc::CallResult execute(sc::CallContext& ctx, const sc::Call& call) override {
    if (call.function == "keep") {
      ++calls;
      return sc::CallResult::ok();
    }
    if (call.function == "echo") {
      sc::expect_arity(call.args, 1);
      const auto burn = sc::arg<std::int64_t>(call.args, 0);
      ctx.burn(burn);
      ctx.pay(ctx.sender(), ctx.value() - burn);
      ++calls;
      return sc::CallResult::ok();
    }
    if (call.function == "fail") {
      ctx.pay(ctx.sender(), ctx.value());
      return sc::CallResult::reject(Error::NotReady);
    }
    if (call.function == "fine") {
      ctx.burn(ctx.value());
      return sc::CallResult::penalize(Error::HashMismatch);
    }
    if (call.function == "height") {
      seen_block = ctx.block();
      return sc::CallResult::ok();
    }
    return sc::CallResult::reject(Error::UnknownFunction);
  }
  void digest_into(chainlab::crypto::HashWriter& w) const override { w.add(calls); }

  std::int64_t calls = 0;
  sc::Height seen_block = -1;
};

sc::CostModel toy_costs() {
  return sc::CostModel({{"constructor", {10, 10}},
                        {"keep", {2, 5}},
                        {"echo", {3, 3}},
                        {"fail", {1, 1}},
                        {"fine", {1, 1}},
                        {"height", {1, 1}}});
}

struct Fixture {
  explicit Fixture(sc::ChainOptions options = {}) : chain(options) {
    alice = chain.create_identity(sc::PrincipalId{1}, false, "alice");
    chain.mint(alice, 1000);
    toy = chain.deploy(alice, std::make_unique<Toy>(), toy_costs(), 0);
  }
  Toy& contract() { return chain.contract_as<Toy>(toy); }

  sc::Chain chain;
  IdentityId alice;
  IdentityId toy;
};

}  // namespace

TEST(Schedule, WindowsAndLookup) {
  const sc::Schedule s({{0, 4}, {5, 9}, {12, 12}});
  EXPECT_EQ(s.active_step(0), 0u);
  EXPECT_EQ(s.active_step(4), 0u);
  EXPECT_EQ(s.active_step(5), 1u);
  EXPECT_EQ(s.active_step(10), std::nullopt);
  EXPECT_EQ(s.active_step(12), 2u);
  EXPECT_EQ(s.active_step(13), std::nullopt);
  EXPECT_TRUE(sc::in_window(9, 1, s));
  EXPECT_FALSE(sc::in_window(9, 0, s));
  EXPECT_FALSE(sc::in_window(9, 7, s));
}

TEST(Schedule, RejectsBadWindows) {
  EXPECT_THROW(sc::Schedule({{3, 2}}), std::invalid_argument);
  EXPECT_THROW(sc::Schedule({{0, 4}, {4, 6}}), std::invalid_argument);
  EXPECT_THROW(sc::Schedule({{5, 6}, {0, 1}}), std::invalid_argument);
}

TEST(CostModel, ParsesBothForms) {
  const auto m = sc::CostModel::parse("# header\nalpha = 7\n  beta = 2 9   # trailing\n\n");
  ASSERT_EQ(m.entries().size(), 2u);
  EXPECT_EQ(m.at("alpha").min, 7);
  EXPECT_EQ(m.at("alpha").max, 7);
  EXPECT_EQ(m.at("beta").min, 2);
  EXPECT_EQ(m.at("beta").max, 9);
  EXPECT_FALSE(m.contains("gamma"));
  EXPECT_THROW(m.at("gamma"), ChainError);
}

TEST(CostModel, ParseErrors) {
  for (const char* bad : {"alpha", "alpha =", "= 5", "alpha = x", "alpha = -1", "alpha = 1 2 3", "alpha = 9 2",
                          "alpha = 1\nalpha = 2", "alpha = 5x"}) {
    EXPECT_THROW(sc::CostModel::parse(bad), std::invalid_argument) << bad;
  }
}

TEST(CostModel, ChargePolicies) {
  const auto m = sc::CostModel::parse("f = 10 20");
  EXPECT_EQ(sc::charge(m, "f", sc::ChargePolicy::Min, true), 10);
  EXPECT_EQ(sc::charge(m, "f", sc::ChargePolicy::Max, false), 20);
  EXPECT_EQ(sc::charge(m, "f", sc::ChargePolicy::Midpoint, false), 15);
  EXPECT_EQ(sc::charge(m, "f", sc::ChargePolicy::ColdWarm, true), 20);
  EXPECT_EQ(sc::charge(m, "f", sc::ChargePolicy::ColdWarm, false), 10);

  sc::GasMeter meter;
  EXPECT_EQ(meter.charge(m, "a", "f"), 20);
  EXPECT_EQ(meter.charge(m, "a", "f"), 10);
  // Cold memory is per contract kind.
  EXPECT_EQ(meter.charge(m, "b", "f"), 20);
}

TEST(Chain, CallsRunInTheNextBlock) {
  Fixture f;
  EXPECT_EQ(f.chain.height(), 0);
  f.chain.submit(f.alice, f.toy, {"height", {}});
  EXPECT_EQ(f.contract().seen_block, -1);
  ASSERT_EQ(f.chain.pending().size(), 1u);
  const auto block = f.chain.advance_block();
  ASSERT_EQ(block.size(), 1u);
  EXPECT_EQ(block[0].block, 1);
  EXPECT_EQ(f.contract().seen_block, 1);
  EXPECT_TRUE(f.chain.pending().empty());
}

TEST(Chain, AttachedValueEscrowedUntilExecution) {
  Fixture f;
  f.chain.submit(f.alice, f.toy, {"keep", {}}, 300);
  EXPECT_EQ(f.chain.balance(f.alice), 700);
  EXPECT_EQ(f.chain.balance(f.toy), 0);
  EXPECT_EQ(f.chain.total_supply(), f.chain.minted());
  f.chain.advance_block();
  EXPECT_EQ(f.chain.balance(f.toy), 300);
  EXPECT_EQ(f.chain.total_supply(), f.chain.minted());
}

TEST(Chain, RejectedCallRefundsAndDropsPayments) {
  Fixture f;
  f.chain.submit(f.alice, f.toy, {"fail", {}}, 250);
  const auto block = f.chain.advance_block();
  EXPECT_EQ(block[0].status, sc::TxStatus::Rejected);
  EXPECT_EQ(block[0].error, Error::NotReady);
  EXPECT_FALSE(block[0].executed());
  EXPECT_EQ(f.chain.balance(f.alice), 1000);
  EXPECT_EQ(f.chain.balance(f.toy), 0);
}

TEST(Chain, PenalizedCallKeepsSideEffects) {
  Fixture f;
  f.chain.submit(f.alice, f.toy, {"fine", {}}, 40);
  const auto block = f.chain.advance_block();
  EXPECT_EQ(block[0].status, sc::TxStatus::Penalized);
  EXPECT_TRUE(block[0].executed());
  EXPECT_FALSE(block[0].valid());
  EXPECT_EQ(f.chain.balance(f.alice), 960);
  EXPECT_EQ(f.chain.balance(f.chain.burn_sink()), 40);
}

TEST(Chain, PaymentsAndBurns) {
  Fixture f;
  f.chain.submit(f.alice, f.toy, {"echo", {std::int64_t{15}}}, 100);
  f.chain.advance_block();
  EXPECT_EQ(f.chain.balance(f.alice), 985);
  EXPECT_EQ(f.chain.balance(f.chain.burn_sink()), 15);
  EXPECT_EQ(f.chain.total_supply(), 1000);
}

TEST(Chain, BadArgumentsBecomeRejection) {
  Fixture f;
  f.chain.submit(f.alice, f.toy, {"echo", {std::string("x")}}, 10);
  f.chain.submit(f.alice, f.toy, {"echo", {}}, 10);
  const auto block = f.chain.advance_block();
  EXPECT_EQ(block[0].error, Error::BadArguments);
  EXPECT_EQ(block[1].error, Error::BadArguments);
  EXPECT_EQ(f.chain.balance(f.alice), 1000);
}

TEST(Chain, SubmitErrors) {
  Fixture f;
  const auto expect_code = [&](auto&& fn, Error code) {
    try {
      fn();
      ADD_FAILURE() << "no throw";
    } catch (const ChainError& e) {
      EXPECT_EQ(e.code(), code);
    }
  };
  expect_code([&] { f.chain.submit(f.alice, f.toy, {"nope", {}}); }, Error::UnknownFunction);
  expect_code([&] { f.chain.submit(f.alice, f.toy, {"constructor", {}}); }, Error::UnknownFunction);
  expect_code([&] { f.chain.submit(f.alice, f.alice, {"keep", {}}); }, Error::UnknownContract);
  expect_code([&] { f.chain.submit(f.alice, f.toy, {"keep", {}}, 5000); }, Error::InsufficientBalance);
  expect_code([&] { f.chain.deploy(f.alice, std::make_unique<Toy>(), toy_costs(), 5000); },
              Error::InsufficientBalance);
}

TEST(Chain, FeesFollowColdWarmGas) {
  Fixture f(sc::ChainOptions{0, sc::ChargePolicy::ColdWarm, 2});
  // Constructor: 10 gas at price 2.
  EXPECT_EQ(f.chain.balance(f.alice), 980);
  f.chain.submit(f.alice, f.toy, {"keep", {}});
  f.chain.submit(f.alice, f.toy, {"keep", {}});
  const auto block = f.chain.advance_block();
  EXPECT_EQ(block[0].gas, 5);
  EXPECT_EQ(block[1].gas, 2);
  EXPECT_EQ(block[0].fee, 10);
  EXPECT_EQ(block[1].fee, 4);
  EXPECT_EQ(f.chain.balance(f.alice), 966);
  EXPECT_EQ(f.chain.balance(f.chain.fee_sink()), 34);
  EXPECT_EQ(f.chain.total_supply(), f.chain.minted());
}

TEST(Chain, FeeCappedByBalance) {
  sc::Chain chain(sc::ChainOptions{0, sc::ChargePolicy::Max, 100});
  const auto poor = chain.create_identity();
  chain.mint(poor, 30);
  chain.deploy(poor, std::make_unique<Toy>(), toy_costs(), 0);
  EXPECT_EQ(chain.balance(poor), 0);
  EXPECT_EQ(chain.balance(chain.fee_sink()), 30);
}

TEST(Chain, BeaconOnlyForPastBlocks) {
  Fixture f;
  f.chain.advance_to(3);
  const auto b3 = f.chain.beacon_output(3);
  EXPECT_NE(b3, f.chain.beacon_output(2));
  try {
    f.chain.beacon_output(4);
    FAIL();
  } catch (const ChainError& e) {
    EXPECT_EQ(e.code(), Error::FutureBlock);
  }
  Fixture g;
  g.chain.advance_to(3);
  EXPECT_EQ(g.chain.beacon_output(3), b3);
  Fixture other(sc::ChainOptions{99});
  other.chain.advance_to(3);
  EXPECT_NE(other.chain.beacon_output(3), b3);
}

TEST(Chain, IdentitySignatures) {
  Fixture f;
  const auto bob = f.chain.create_identity(sc::PrincipalId{2}, true, "bob");
  chainlab::crypto::Digest msg{};
  msg[0] = 1;
  const auto sig = f.chain.identity_sign(bob, msg);
  EXPECT_TRUE(f.chain.identity_verify(bob, msg, sig));
  EXPECT_FALSE(f.chain.identity_verify(f.alice, msg, sig));
  msg[0] = 2;
  EXPECT_FALSE(f.chain.identity_verify(bob, msg, sig));
  EXPECT_FALSE(f.chain.identity_verify(IdentityId{999}, msg, sig));
  EXPECT_TRUE(f.chain.identity(bob).is_pseudonym);
  EXPECT_EQ(f.chain.identity(bob).owner, sc::PrincipalId{2});
}

TEST(Chain, StateDigestReplays) {
  Fixture a, b;
  for (Fixture* f : {&a, &b}) {
    f->chain.submit(f->alice, f->toy, {"keep", {}}, 3);
    f->chain.advance_block();
  }
  EXPECT_EQ(a.chain.state_digest(), b.chain.state_digest());
  a.chain.submit(a.alice, a.toy, {"keep", {}});
  a.chain.advance_block();
  b.chain.advance_block();
  EXPECT_NE(a.chain.state_digest(), b.chain.state_digest());
}
