#include "chainlab/crypto/rsa.hpp"

#include <array>

#include "chainlab/crypto/hash.hpp"

namespace chainlab::crypto {

namespace {

BigInt mod(const BigInt& a, const BigInt& n) {
  BigInt r = a % n;
  if (r < 0) r += n;
  return r;
}

BigInt random_prime(unsigned bits, DeterministicRng& rng) {
  for (;;) {
    BigInt candidate = rng.bits(bits);
    // Top two bits set so the product of two such primes has full width.
    boost::multiprecision::bit_set(candidate, bits - 1);
    boost::multiprecision::bit_set(candidate, bits - 2);
    boost::multiprecision::bit_set(candidate, 0);
    if (is_probable_prime(candidate, rng)) return candidate;
  }
}

}  // namespace

BigInt powm(const BigInt& base, const BigInt& exponent, const BigInt& modulus) {
  if (modulus == 1) return 0;
  return boost::multiprecision::powm(mod(base, modulus), exponent, modulus);
}

BigInt mod_inverse(const BigInt& a, const BigInt& n) {
  BigInt old_r = mod(a, n), r = n;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw CryptoError(CryptoErrc::NotAUnit, "value is not a unit modulo N");
  return mod(old_s, n);
}

bool is_probable_prime(const BigInt& n, DeterministicRng& rng, int rounds) {
  static constexpr std::array<unsigned, 12> kSmall = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (unsigned p : kSmall) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  BigInt d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto witness = [&](const BigInt& a) {
    BigInt x = powm(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n - 1) return false;
    }
    return true;
  };
  // The first twelve prime bases are deterministic below 3.18e23.
  for (unsigned p : kSmall) {
    if (witness(BigInt(p))) return false;
  }
  if (n < BigInt("318665857834031151167461")) return true;
  for (int i = 0; i < rounds; ++i) {
    if (witness(rng.uniform(BigInt(2), n - 2))) return false;
  }
  return true;
}

RsaKeyPair keypair_from_primes(const BigInt& p, const BigInt& q, const BigInt& e) {
  DeterministicRng rng(0, "keypair_from_primes");
  if (p == q || !is_probable_prime(p, rng) || !is_probable_prime(q, rng)) {
    throw CryptoError(CryptoErrc::InvalidKey, "RSA factors must be distinct primes");
  }
  const BigInt lambda = boost::multiprecision::lcm(BigInt(p - 1), BigInt(q - 1));
  if (e <= 1 || e >= lambda || boost::multiprecision::gcd(e, lambda) != 1) {
    throw CryptoError(CryptoErrc::InvalidKey, "public exponent is not a unit modulo lambda(N)");
  }
  return {p * q, e, mod_inverse(e, lambda)};
}

RsaKeyPair keygen(unsigned bits, DeterministicRng& rng) {
  if (bits < 16) throw CryptoError(CryptoErrc::InvalidKey, "RSA modulus must have at least 16 bits");
  static constexpr std::array<unsigned, 5> kExponents = {65537, 257, 17, 5, 3};
  const unsigned p_bits = bits / 2;
  const unsigned q_bits = bits - p_bits;
  for (;;) {
    const BigInt p = random_prime(p_bits, rng);
    const BigInt q = random_prime(q_bits, rng);
    if (p == q) continue;
    const BigInt lambda = boost::multiprecision::lcm(BigInt(p - 1), BigInt(q - 1));
    for (unsigned e : kExponents) {
      if (e < lambda && boost::multiprecision::gcd(BigInt(e), lambda) == 1) {
        return {p * q, e, mod_inverse(e, lambda)};
      }
    }
  }
}

BigInt blind(const BigInt& h, const BigInt& r, const PublicKey& key) {
  if (boost::multiprecision::gcd(mod(r, key.modulus), key.modulus) != 1) {
    throw CryptoError(CryptoErrc::NotAUnit, "blinding factor is not a unit modulo N");
  }
  return mod(h, key.modulus) * powm(r, key.exponent, key.modulus) % key.modulus;
}

BigInt sign(const BigInt& x, const RsaKeyPair& key) {
  if (x < 0 || x >= key.modulus) throw CryptoError(CryptoErrc::OutOfRange, "message outside [0, N)");
  return powm(x, key.private_exponent, key.modulus);
}

BigInt unblind(const BigInt& s_blinded, const BigInt& r, const BigInt& modulus) {
  return mod(s_blinded, modulus) * mod_inverse(r, modulus) % modulus;
}

bool verify(const BigInt& h, const BigInt& s, const PublicKey& key) {
  if (key.modulus <= 1) return false;
  return powm(s, key.exponent, key.modulus) == mod(h, key.modulus);
}

BigInt random_unit(const BigInt& modulus, DeterministicRng& rng) {
  for (;;) {
    BigInt r = rng.uniform(BigInt(2), modulus - 1);
    if (boost::multiprecision::gcd(r, modulus) == 1) return r;
  }
}

bool plausible_public_key(const PublicKey& key) {
  return key.modulus > 3 && (key.modulus & 1) == 1 && key.exponent > 1 && key.exponent < key.modulus &&
         (key.exponent & 1) == 1;
}

BigInt hash_public_key(const PublicKey& key, const BigInt& signer_modulus) {
  const Digest digest = HashWriter{}
                            .add(std::string_view{"rsa-public-key"})
                            .add(key.modulus)
                            .add(key.exponent)
                            .digest();
  return to_bigint(digest) % signer_modulus;
}

}  // namespace chainlab::crypto
