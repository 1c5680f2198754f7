#include "chainlab/harness/vote_runner.hpp"

#include <algorithm>

#include "chainlab/blindvote/offchain.hpp"
#include "chainlab/crypto/commitment.hpp"
#include "chainlab/crypto/rng.hpp"

namespace chainlab::harness {

using crypto::BigInt;
using simchain::Arg;
using simchain::Call;

const blindvote::VotingContract& VoteRun::contract() const {
  return chain->contract_as<blindvote::VotingContract>(contract_id);
}

simchain::Gas VoteRun::total_gas() const {
  simchain::Gas total = 0;
  for (const simchain::Transaction& tx : chain->state().log) total += tx.gas;
  return total;
}

const PartyAccount& VoteRun::party(std::string_view name) const {
  const PartyAccount* p = find_party(parties, name);
  if (!p) throw std::out_of_range("no party " + std::string(name));
  return *p;
}

namespace {

struct Voter {
  IdentityId id;
  const VoterSpec* spec = nullptr;
  crypto::RsaKeyPair key;
  BigInt message;
  BigInt blinding;
  std::optional<BigInt> offchain_signature;
  std::optional<BigInt> signature;
  crypto::Nonce nonce{};
  crypto::Digest commitment{};
  bool committed = false;
};

/// A payload waiting for a relay. Relays take them in content order so the
/// submission order says nothing about who posted what.
struct Posting {
  crypto::Digest order{};
  Call call;
};

crypto::Digest posting_order(const Call& call) {
  crypto::HashWriter w;
  w.add(std::string_view(call.function));
  for (const Arg& a : call.args) w.add(std::string_view(simchain::describe(a)));
  return w.digest();
}

}  // namespace

VoteRun run_vote(const VoteScenario& s) {
  VoteRun run;
  run.chain = std::make_unique<simchain::Chain>(s.chain);
  simchain::Chain& chain = *run.chain;
  const auto& cfg = s.config;
  const auto& t = cfg.deadlines;
  const bool premature = cfg.variant == blindvote::Variant::Premature;
  crypto::DeterministicRng rng(s.chain.seed, "vote-harness");

  std::uint64_t next_principal = 1;
  auto add_party = [&](std::string name, std::string role, Amount funds) {
    const PrincipalId principal{next_principal++};
    const IdentityId id = chain.create_identity(principal, false, name);
    chain.mint(id, funds);
    run.parties.push_back(PartyAccount{std::move(name), std::move(role), principal, funds});
    return id;
  };

  const IdentityId admin = add_party("admin", "admin", s.admin_funds);
  std::vector<Voter> voters;
  for (std::size_t i = 0; i < s.voters.size(); ++i) {
    Voter v;
    v.id = add_party("voter" + std::to_string(i + 1), "voter", s.voter_funds);
    v.spec = &s.voters[i];
    voters.push_back(std::move(v));
    run.voter_ids.push_back(voters.back().id);
  }
  std::vector<IdentityId> relays;
  for (int k = 0; k < s.relays; ++k) relays.push_back(add_party("relay" + std::to_string(k + 1), "relay", s.voter_funds));

  auto admin_rng = rng.derive("admin-key");
  const crypto::RsaKeyPair admin_key = crypto::keygen(s.admin_key_bits, admin_rng);
  const crypto::PublicKey admin_pub = admin_key.public_key();

  run.contract_id = chain.deploy(admin, std::make_unique<blindvote::VotingContract>(admin, cfg), s.costs,
                                 cfg.admin_deposit);
  const IdentityId contract = run.contract_id;
  const auto& view = chain.contract_as<blindvote::VotingContract>(contract);
  blindvote::OffchainChannel channel(chain, contract, admin_key);

  auto send = [&](IdentityId from, std::string fn, std::vector<Arg> args = {}, Amount value = 0) {
    chain.submit(from, contract, Call{std::move(fn), std::move(args)}, value);
  };
  auto relay_out = [&](std::vector<Posting> board) {
    std::sort(board.begin(), board.end(), [](const Posting& a, const Posting& b) { return a.order < b.order; });
    for (std::size_t k = 0; k < board.size(); ++k) {
      chain.submit(relays[k % relays.size()], contract, std::move(board[k].call));
    }
  };

  // Step 1: approvals and registrations.
  for (const Voter& v : voters) {
    if (v.spec->approved) send(admin, "approve", {v.id});
  }
  for (const Voter& v : voters) send(v.id, "register", {}, cfg.fee);
  chain.advance_to(t[0]);

  // Step 2: refunds for unapproved registrants, admin key.
  for (const Voter& v : voters) {
    if (!v.spec->approved) send(v.id, "step1_refund");
  }
  send(admin, "initiate", {admin_pub.modulus, admin_pub.exponent});
  chain.advance_to(t[1]);

  // Step 3: delegation, on chain or through the authenticated channel.
  const bool refusing = s.admin_policy == AdminPolicy::RefuseSign;
  for (std::size_t i = 0; i < voters.size(); ++i) {
    Voter& v = voters[i];
    if (!v.spec->approved || v.spec->policy == VoterPolicy::Silent) continue;
    auto vrng = rng.derive("voter-" + std::to_string(i));
    v.key = crypto::keygen(s.voter_key_bits, vrng);
    v.nonce = vrng.next_digest();
    v.commitment = crypto::commit_message(v.spec->vote, v.nonce);
    v.message = premature ? crypto::to_bigint(v.commitment) % admin_pub.modulus
                          : crypto::hash_public_key(v.key.public_key(), admin_pub.modulus);
    v.blinding = crypto::random_unit(admin_pub.modulus, vrng);
    const BigInt blinded = crypto::blind(v.message, v.blinding, admin_pub);
    if (!cfg.offchain_signing) {
      send(v.id, "delegate", {blinded});
      continue;
    }
    channel.deliver(v.id, blinded, chain.identity_sign(v.id, blindvote::offchain_request_digest(contract, blinded)));
    if (!(refusing && i == s.refuse_target)) v.offchain_signature = channel.return_signature(v.id);
    if (!v.offchain_signature) {
      send(v.id, "delegate", {blinded});
    } else if (v.spec->policy == VoterPolicy::DoubleDemand) {
      const BigInt second = crypto::blind(v.message, crypto::random_unit(admin_pub.modulus, vrng), admin_pub);
      send(v.id, "delegate", {second});
    }
  }
  chain.advance_to(t[2]);

  // Step 4: the admin answers on-chain delegations.
  for (std::size_t i = 0; i < voters.size(); ++i) {
    const Voter& v = voters[i];
    auto it = view.voters().find(v.id);
    if (it == view.voters().end() || !it->second.blinded || it->second.blind_signature) continue;
    auto evidence = cfg.offchain_signing ? channel.evidence(v.id) : std::nullopt;
    if (evidence && evidence->blinded != *it->second.blinded && v.offchain_signature) {
      send(admin, "report", {v.id, evidence->blinded, evidence->sigma});
      continue;
    }
    if (refusing && i == s.refuse_target) continue;
    send(admin, "blind_sign", {v.id, crypto::sign(*it->second.blinded, admin_key)});
  }
  chain.advance_to(t[3]);

  // Step 5: unblind, then commit through relays.
  std::vector<Posting> board;
  for (Voter& v : voters) {
    if (!v.spec->approved || v.spec->policy == VoterPolicy::Silent) continue;
    std::optional<BigInt> blind_sig = v.offchain_signature;
    if (!blind_sig) {
      auto it = view.voters().find(v.id);
      if (it != view.voters().end()) blind_sig = it->second.blind_signature;
    }
    if (!blind_sig) {
      send(v.id, "report_refused_signature", {v.id});
      continue;
    }
    v.signature = crypto::unblind(*blind_sig, v.blinding, admin_pub.modulus);
    if (!crypto::verify(v.message, *v.signature, admin_pub)) continue;
    Call call;
    if (premature) {
      call = Call{"commit_premature", {*v.signature, v.commitment}};
    } else {
      const BigInt self_sig = crypto::sign(crypto::to_bigint(v.commitment) % v.key.modulus, v.key);
      call = Call{"commit", {v.key.modulus, v.key.public_exponent, *v.signature, v.commitment, self_sig}};
    }
    board.push_back(Posting{posting_order(call), std::move(call)});
    v.committed = true;
  }
  if (s.admin_policy == AdminPolicy::OverSign) {
    auto grng = rng.derive("ghost");
    const crypto::RsaKeyPair ghost = crypto::keygen(s.voter_key_bits, grng);
    const crypto::Digest c = crypto::commit_message("ghost", grng.next_digest());
    Call call;
    if (premature) {
      call = Call{"commit_premature", {crypto::sign(crypto::to_bigint(c) % admin_pub.modulus, admin_key), c}};
    } else {
      const BigInt s_admin = crypto::sign(crypto::hash_public_key(ghost.public_key(), admin_pub.modulus), admin_key);
      call = Call{"commit", {ghost.modulus, ghost.public_exponent, s_admin, c,
                             crypto::sign(crypto::to_bigint(c) % ghost.modulus, ghost)}};
    }
    board.push_back(Posting{posting_order(call), std::move(call)});
  }
  relay_out(std::move(board));
  chain.advance_block();

  if (view.cancelled()) {
    const char* fn = view.cancellation() == blindvote::Cancellation::RefusedSignature ? "step4_refund" : "step5_refund";
    for (const Voter& v : voters) {
      if (v.spec->approved && view.is_valid_voter(v.id)) send(v.id, fn);
    }
    chain.advance_block();
  } else {
    // Step 6: reveals through relays.
    chain.advance_to(t[4]);
    std::vector<Posting> reveals;
    for (const Voter& v : voters) {
      if (!v.committed || v.spec->policy == VoterPolicy::NoReveal) continue;
      Call call{"reveal", {v.commitment, v.spec->vote, v.nonce}};
      reveals.push_back(Posting{posting_order(call), std::move(call)});
    }
    relay_out(std::move(reveals));
    chain.advance_to(t[5]);
    send(admin, "admin_refund");
    for (const Voter& v : voters) {
      if (v.spec->approved && v.spec->policy != VoterPolicy::Silent) send(v.id, "voter_refund");
    }
    chain.advance_block();
  }

  run.offchain_messages = channel.messages();
  close_accounts(chain, run.parties);
  run.penalties = penalty_events(chain, run.parties);
  return run;
}

}  // namespace chainlab::harness
