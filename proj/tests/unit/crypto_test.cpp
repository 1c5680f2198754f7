#include <gtest/gtest.h>

#include <string>

#include "chainlab/crypto/commitment.hpp"
#include "chainlab/crypto/hash.hpp"
#include "chainlab/crypto/rng.hpp"
#include "chainlab/crypto/rsa.hpp"

namespace cr = chainlab::crypto;
using cr::BigInt;

namespace {

cr::Digest hash_text(std::string_view s) {
  return cr::sha256({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
}

bool trial_division_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

cr::RsaKeyPair textbook() { return cr::keypair_from_primes(61, 53, 17); }

}  // namespace

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(cr::to_hex(hash_text("abc")), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(cr::to_hex(hash_text("")), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Bytes, MinimalBigEndian) {
  EXPECT_TRUE(cr::to_bytes(0).empty());
  EXPECT_EQ(cr::to_bytes(256), (std::vector<std::uint8_t>{1, 0}));
  cr::Digest d{};
  d[31] = 7;
  d[30] = 1;
  EXPECT_EQ(cr::to_bigint(d), BigInt(263));
}

TEST(HashWriter, FieldBoundariesMatter) {
  cr::HashWriter a, b, c;
  a.add(std::string_view("ab")).add(std::string_view("c"));
  b.add(std::string_view("a")).add(std::string_view("bc"));
  c.add(std::string_view("ab")).add(std::string_view("c"));
  EXPECT_NE(a.digest(), b.digest());
  EXPECT_EQ(a.digest(), c.digest());

  cr::HashWriter i, u;
  i.add(std::int64_t{5});
  u.add(std::uint64_t{5});
  EXPECT_NE(i.digest(), u.digest());
}

TEST(Rsa, TextbookKey) {
  const auto key = textbook();
  EXPECT_EQ(key.modulus, 3233);
  EXPECT_EQ(key.private_exponent, 413);
  EXPECT_EQ(cr::sign(65, key), 588);
  EXPECT_TRUE(cr::verify(65, 588, key.public_key()));
  EXPECT_FALSE(cr::verify(66, 588, key.public_key()));
}

TEST(Rsa, BlindingTextbook) {
  const auto key = textbook();
  EXPECT_EQ(cr::blind(5, 7, key.public_key()), 2146);
  const BigInt blinded_sig = cr::sign(2146, key);
  const BigInt s = cr::unblind(blinded_sig, 7, key.modulus);
  EXPECT_EQ(s, cr::sign(5, key));
  EXPECT_TRUE(cr::verify(5, s, key.public_key()));
}

TEST(Rsa, ModInverse) {
  EXPECT_EQ(cr::mod_inverse(17, 780), 413);
  EXPECT_EQ(cr::mod_inverse(3, 7), 5);
  try {
    cr::mod_inverse(6, 9);
    FAIL();
  } catch (const cr::CryptoError& e) {
    EXPECT_EQ(e.code(), cr::CryptoErrc::NotAUnit);
  }
}

TEST(Rsa, BadPrimesRejected) {
  EXPECT_THROW(cr::keypair_from_primes(61, 61, 17), cr::CryptoError);
  EXPECT_THROW(cr::keypair_from_primes(61, 55, 17), cr::CryptoError);
  // gcd(3, 780) = 3.
  EXPECT_THROW(cr::keypair_from_primes(61, 53, 3), cr::CryptoError);
}

TEST(Rsa, PrimalityAgreesWithTrialDivision) {
  cr::DeterministicRng rng(1, "primes");
  for (unsigned n = 0; n < 3000; ++n) {
    EXPECT_EQ(cr::is_probable_prime(n, rng), trial_division_prime(n)) << n;
  }
  // Carmichael numbers.
  for (unsigned n : {561u, 1105u, 1729u, 2465u, 2821u, 6601u, 8911u}) EXPECT_FALSE(cr::is_probable_prime(n, rng));
}

TEST(Rsa, KeygenRoundTrip) {
  cr::DeterministicRng rng(9, "keys");
  for (unsigned bits : {32u, 48u, 64u, 128u}) {
    const auto key = cr::keygen(bits, rng);
    EXPECT_EQ(msb(key.modulus) + 1, bits);
    EXPECT_TRUE(cr::plausible_public_key(key.public_key()));
    const BigInt h = cr::hash_public_key({BigInt(12345), BigInt(3)}, key.modulus);
    const BigInt r = cr::random_unit(key.modulus, rng);
    const BigInt s = cr::unblind(cr::sign(cr::blind(h, r, key.public_key()), key), r, key.modulus);
    EXPECT_TRUE(cr::verify(h, s, key.public_key()));
  }
}

TEST(Rsa, SignRejectsOutOfRange) { EXPECT_THROW(cr::sign(3233, textbook()), cr::CryptoError); }

TEST(Rsa, PlausibilityScreen) {
  EXPECT_TRUE(cr::plausible_public_key({3233, 17}));
  EXPECT_FALSE(cr::plausible_public_key({3234, 17}));
  EXPECT_FALSE(cr::plausible_public_key({3233, 1}));
  EXPECT_FALSE(cr::plausible_public_key({0, 3}));
}

TEST(Rng, ReplayableAndStreamSeparated) {
  cr::DeterministicRng a(42, "x"), b(42, "x"), c(42, "y"), d(43, "x");
  const auto va = a.next_u64();
  EXPECT_EQ(va, b.next_u64());
  EXPECT_NE(va, c.next_u64());
  EXPECT_NE(va, d.next_u64());
  for (int i = 0; i < 1000; ++i) {
    const auto v = a.uniform(-3, 3);
    EXPECT_GE(v, -3);
    EXPECT_LE(v, 3);
    EXPECT_LT(a.below(7), 7u);
  }
}

TEST(Rng, DeriveDoesNotAdvance) {
  cr::DeterministicRng a(1, "s"), b(1, "s");
  auto child = a.derive("child");
  child.next_u64();
  EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Commitment, OpensOnlyToCommittedValue) {
  cr::DeterministicRng rng(5, "nonce");
  const auto n = rng.next_digest();
  const auto c = cr::commit_bid(12, n);
  EXPECT_TRUE(cr::commit_open_bid(c, 12, n));
  EXPECT_FALSE(cr::commit_open_bid(c, 11, n));
  EXPECT_FALSE(cr::commit_open_bid(c, 12, rng.next_digest()));
  const auto m = cr::commit_message("yes", n);
  EXPECT_TRUE(cr::commit_open(m, "yes", n));
  EXPECT_FALSE(cr::commit_open(m, "no", n));
}
