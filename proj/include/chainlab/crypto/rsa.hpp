#pragma once

#include <stdexcept>
#include <string>

#include "chainlab/crypto/bigint.hpp"
#include "chainlab/crypto/rng.hpp"

namespace chainlab::crypto {

enum class CryptoErrc { NotAUnit, OutOfRange, InvalidKey };

class CryptoError : public std::runtime_error {
 public:
  CryptoError(CryptoErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  CryptoErrc code() const noexcept { return code_; }

 private:
  CryptoErrc code_;
};

struct PublicKey {
  BigInt modulus;
  BigInt exponent;

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct RsaKeyPair {
  BigInt modulus;
  BigInt public_exponent;
  BigInt private_exponent;

  PublicKey public_key() const { return {modulus, public_exponent}; }
  friend bool operator==(const RsaKeyPair&, const RsaKeyPair&) = default;
};

BigInt powm(const BigInt& base, const BigInt& exponent, const BigInt& modulus);

/// Inverse of a modulo n. Throws NotAUnit when gcd(a, n) != 1.
BigInt mod_inverse(const BigInt& a, const BigInt& n);

bool is_probable_prime(const BigInt& n, DeterministicRng& rng, int rounds = 24);

/// Modulus of exactly `bits` bits built from two distinct primes of about
/// half that size. Private exponent is taken modulo the Carmichael function.
RsaKeyPair keygen(unsigned bits, DeterministicRng& rng);

/// Throws InvalidKey unless p, q are distinct primes and e is a unit mod
/// lambda(pq).
RsaKeyPair keypair_from_primes(const BigInt& p, const BigInt& q, const BigInt& e);

/// h * r^e mod N.
BigInt blind(const BigInt& h, const BigInt& r, const PublicKey& key);

/// x^d mod N. Requires 0 <= x < N.
BigInt sign(const BigInt& x, const RsaKeyPair& key);

/// s_blinded * r^-1 mod N.
BigInt unblind(const BigInt& s_blinded, const BigInt& r, const BigInt& modulus);

/// s^e == h (mod N).
bool verify(const BigInt& h, const BigInt& s, const PublicKey& key);

/// Uniform element of the unit group mod N, excluding 1.
BigInt random_unit(const BigInt& modulus, DeterministicRng& rng);

/// Range and parity screen for a key submitted on-chain. Does not prove the
/// modulus is a product of two primes.
bool plausible_public_key(const PublicKey& key);

/// hash(N_i, e_i) as an integer reduced modulo the signer's modulus.
BigInt hash_public_key(const PublicKey& key, const BigInt& signer_modulus);

}  // namespace chainlab::crypto
