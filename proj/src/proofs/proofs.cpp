#include "chainlab/proofs/proofs.hpp"

#include "chainlab/auction/fake_bids.hpp"

namespace chainlab::proofs {

std::string describe(const Statement& statement) {
  if (const auto* lt = std::get_if<LessThan>(&statement)) {
    return "less_than(" + crypto::to_hex(lt->commitment) + "," + std::to_string(lt->bound) + ")";
  }
  const auto& fb = std::get<FakeBidCorrect>(statement);
  std::string out = "fake_bid(" + crypto::to_hex(fb.rho) + "," + std::to_string(fb.m) + "," +
                    std::to_string(fb.claimed);
  if (fb.commitment) out += "," + crypto::to_hex(*fb.commitment);
  return out + ")";
}

bool ProofRegistry::holds(const Statement& statement, const Witness& witness) {
  if (const auto* lt = std::get_if<LessThan>(&statement)) {
    return witness.bid < lt->bound && crypto::commit_open_bid(lt->commitment, witness.bid, witness.nonce);
  }
  const auto& fb = std::get<FakeBidCorrect>(statement);
  if (fb.m < 1) return false;
  if (fb.commitment && !crypto::commit_open_bid(*fb.commitment, witness.bid, witness.nonce)) return false;
  return auction::compute_fake_bid(fb.rho, witness.nonce, fb.m) == fb.claimed;
}

ProofToken ProofRegistry::add(Statement statement, Witness witness) {
  const std::uint64_t handle = next_handle_++;
  const bool valid = holds(statement, witness);
  entries_.emplace(handle, Entry{statement, witness, valid});
  return ProofToken{std::move(statement), handle};
}

ProofToken ProofRegistry::prove_less_than(std::int64_t bid, const crypto::Nonce& nonce,
                                          const crypto::Digest& commitment, std::int64_t bound) {
  return add(LessThan{commitment, bound}, Witness{bid, nonce});
}

ProofToken ProofRegistry::prove_fake_bid(const crypto::Nonce& nonce, const crypto::Digest& rho, std::int64_t m,
                                         std::int64_t claimed) {
  return add(FakeBidCorrect{rho, m, claimed, std::nullopt}, Witness{0, nonce});
}

ProofToken ProofRegistry::prove_fake_bid(const crypto::Nonce& nonce, const crypto::Digest& rho, std::int64_t m,
                                         std::int64_t claimed, const crypto::Digest& commitment,
                                         std::int64_t bid) {
  return add(FakeBidCorrect{rho, m, claimed, commitment}, Witness{bid, nonce});
}

bool ProofRegistry::verify(const ProofToken& token) const { return verify(token.handle, token.statement); }

bool ProofRegistry::verify(std::uint64_t handle, const Statement& expected) const {
  auto it = entries_.find(handle);
  if (it == entries_.end()) return false;
  return it->second.statement == expected && it->second.valid;
}

}  // namespace chainlab::proofs
