#include <gtest/gtest.h>

#include "chainlab/auction/fake_bids.hpp"
#include "chainlab/crypto/commitment.hpp"
#include "chainlab/crypto/rng.hpp"
#include "chainlab/proofs/proofs.hpp"

namespace cr = chainlab::crypto;
namespace pf = chainlab::proofs;

namespace {

struct Bidder {
  std::int64_t bid;
  cr::Nonce nonce;
  cr::Digest commitment;
};

Bidder make(std::int64_t bid, std::uint64_t seed) {
  cr::DeterministicRng rng(seed, "bidder");
  Bidder b{bid, rng.next_digest(), {}};
  b.commitment = cr::commit_bid(bid, b.nonce);
  return b;
}

}  // namespace

TEST(LessThan, HoldsOnlyBelowBound) {
  pf::ProofRegistry reg;
  const Bidder b = make(7, 1);
  const auto ok = reg.prove_less_than(b.bid, b.nonce, b.commitment, 12);
  EXPECT_TRUE(reg.verify(ok));
  EXPECT_TRUE(reg.verify(ok.handle, pf::LessThan{b.commitment, 12}));
  // Equal is not less.
  EXPECT_FALSE(reg.verify(reg.prove_less_than(b.bid, b.nonce, b.commitment, 7)));
  EXPECT_TRUE(reg.verify(reg.prove_less_than(b.bid, b.nonce, b.commitment, 8)));
}

TEST(LessThan, WrongWitnessFails) {
  pf::ProofRegistry reg;
  const Bidder b = make(7, 1);
  const Bidder other = make(7, 2);
  EXPECT_FALSE(reg.verify(reg.prove_less_than(6, b.nonce, b.commitment, 12)));
  EXPECT_FALSE(reg.verify(reg.prove_less_than(b.bid, other.nonce, b.commitment, 12)));
}

TEST(Registry, StatementMustMatch) {
  pf::ProofRegistry reg;
  const Bidder b = make(3, 4);
  const auto t = reg.prove_less_than(b.bid, b.nonce, b.commitment, 12);
  EXPECT_FALSE(reg.verify(t.handle, pf::LessThan{b.commitment, 11}));
  EXPECT_FALSE(reg.verify(t.handle, pf::LessThan{make(3, 5).commitment, 12}));
  EXPECT_FALSE(reg.verify(t.handle + 100, t.statement));
  EXPECT_FALSE(reg.verify(0, t.statement));
  EXPECT_EQ(reg.size(), 1u);
}

TEST(FakeBid, MatchesRecomputation) {
  pf::ProofRegistry reg;
  cr::DeterministicRng rng(3, "rho");
  const cr::Digest rho = rng.next_digest();
  const Bidder b = make(9, 6);
  const std::int64_t m = 15;
  // (hash mod m) + 1 computed here from the raw integer.
  const std::int64_t expected = (chainlab::auction::rand_value(rho, b.nonce) % m).convert_to<std::int64_t>() + 1;
  EXPECT_EQ(chainlab::auction::compute_fake_bid(rho, b.nonce, m), expected);
  EXPECT_TRUE(reg.verify(reg.prove_fake_bid(b.nonce, rho, m, expected)));
  EXPECT_FALSE(reg.verify(reg.prove_fake_bid(b.nonce, rho, m, expected % m + 1)));
  EXPECT_FALSE(reg.verify(reg.prove_fake_bid(b.nonce, rho, 0, 1)));
}

TEST(FakeBid, BoundVariantNeedsTheRegisteredNonce) {
  pf::ProofRegistry reg;
  cr::DeterministicRng rng(3, "rho");
  const cr::Digest rho = rng.next_digest();
  const Bidder b = make(9, 6);
  const Bidder other = make(9, 7);
  const std::int64_t mine = chainlab::auction::compute_fake_bid(rho, b.nonce, 15);
  const std::int64_t theirs = chainlab::auction::compute_fake_bid(rho, other.nonce, 15);
  EXPECT_TRUE(reg.verify(reg.prove_fake_bid(b.nonce, rho, 15, mine, b.commitment, b.bid)));
  // A different nonce cannot open the registration commitment.
  EXPECT_FALSE(reg.verify(reg.prove_fake_bid(other.nonce, rho, 15, theirs, b.commitment, b.bid)));
  EXPECT_FALSE(reg.verify(reg.prove_fake_bid(b.nonce, rho, 15, mine, b.commitment, b.bid + 1)));
}

TEST(Statement, DescribeIsStable) {
  const pf::Statement s = pf::LessThan{cr::Digest{}, 5};
  EXPECT_EQ(pf::describe(s), "less_than(" + std::string(64, '0') + ",5)");
}
