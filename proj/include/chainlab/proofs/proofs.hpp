#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "chainlab/crypto/commitment.hpp"
#include "chainlab/crypto/hash.hpp"

namespace chainlab::proofs {

/// Knowledge of (b, n) with hash(b, n) = commitment and b < bound.
struct LessThan {
  crypto::Digest commitment{};
  std::int64_t bound = 0;
  friend bool operator==(const LessThan&, const LessThan&) = default;
};

/// Knowledge of n with claimed = (rand(rho, n) mod m) + 1. When `commitment`
/// is set the same n must also open it to some bid, binding the fake bid to
/// the bidder's registration.
struct FakeBidCorrect {
  crypto::Digest rho{};
  std::int64_t m = 0;
  std::int64_t claimed = 0;
  std::optional<crypto::Digest> commitment;
  friend bool operator==(const FakeBidCorrect&, const FakeBidCorrect&) = default;
};

using Statement = std::variant<LessThan, FakeBidCorrect>;

std::string describe(const Statement& statement);

/// Public part of a proof. The handle points into the registry that holds the
/// witness; it carries no witness information itself.
struct ProofToken {
  Statement statement;
  std::uint64_t handle = 0;
};

/// Simulated designated-verifier proof system. Append-only.
class ProofRegistry {
 public:
  ProofToken prove_less_than(std::int64_t bid, const crypto::Nonce& nonce, const crypto::Digest& commitment,
                             std::int64_t bound);
  ProofToken prove_fake_bid(const crypto::Nonce& nonce, const crypto::Digest& rho, std::int64_t m,
                            std::int64_t claimed);
  /// Variant bound to a registration commitment; `bid` is the committed bid.
  ProofToken prove_fake_bid(const crypto::Nonce& nonce, const crypto::Digest& rho, std::int64_t m,
                            std::int64_t claimed, const crypto::Digest& commitment, std::int64_t bid);

  /// False for unknown handles or a statement that differs from the
  /// registered one.
  bool verify(const ProofToken& token) const;
  /// Contract-side entry: the verifier supplies the statement it expects.
  bool verify(std::uint64_t handle, const Statement& expected) const;

  std::size_t size() const { return entries_.size(); }

 private:
  struct Witness {
    std::int64_t bid = 0;
    crypto::Nonce nonce{};
  };
  struct Entry {
    Statement statement;
    Witness witness;
    bool valid = false;
  };

  ProofToken add(Statement statement, Witness witness);
  static bool holds(const Statement& statement, const Witness& witness);

  std::map<std::uint64_t, Entry> entries_;
  std::uint64_t next_handle_ = 1;
};

}  // namespace chainlab::proofs
