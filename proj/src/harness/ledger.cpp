#include "chainlab/harness/ledger.hpp"

#include <charconv>

namespace chainlab::harness {

void close_accounts(const simchain::Chain& chain, std::vector<PartyAccount>& parties) {
  for (PartyAccount& p : parties) {
    p.final = 0;
    p.fees = 0;
  }
  for (const simchain::Identity& id : chain.identities()) {
    if (!id.owner) continue;
    for (PartyAccount& p : parties) {
      if (p.principal == *id.owner) p.final += chain.balance(id.id);
    }
  }
  for (const simchain::Transaction& tx : chain.state().log) {
    const auto& owner = chain.identity(tx.sender).owner;
    if (!owner) continue;
    for (PartyAccount& p : parties) {
      if (p.principal == *owner) p.fees += tx.fee;
    }
  }
}

const PartyAccount* find_party(const std::vector<PartyAccount>& parties, std::string_view name) {
  for (const PartyAccount& p : parties) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::string party_of(const simchain::Chain& chain, const std::vector<PartyAccount>& parties, IdentityId id) {
  const auto& owner = chain.identity(id).owner;
  if (owner) {
    for (const PartyAccount& p : parties) {
      if (p.principal == *owner) return p.name;
    }
  }
  return "?";
}

namespace {

std::vector<IdentityId> slashed_ids(std::string_view note) {
  std::vector<IdentityId> out;
  constexpr std::string_view tag = "slashed id:";
  for (auto pos = note.find(tag); pos != std::string_view::npos; pos = note.find(tag, pos + 1)) {
    std::uint64_t value = 0;
    const char* begin = note.data() + pos + tag.size();
    auto [ptr, ec] = std::from_chars(begin, note.data() + note.size(), value);
    if (ec == std::errc{}) out.push_back(IdentityId{value});
  }
  return out;
}

}  // namespace

std::vector<PenaltyEvent> penalty_events(const simchain::Chain& chain, const std::vector<PartyAccount>& parties) {
  std::vector<PenaltyEvent> out;
  for (const simchain::Transaction& tx : chain.state().log) {
    const std::string& fn = tx.call.function;
    auto add = [&](std::string kind, std::string offender) {
      out.push_back(PenaltyEvent{tx.block, tx.seq, fn, std::move(kind), std::move(offender)});
    };
    if (tx.status == simchain::TxStatus::Penalized) {
      const std::string kind(tx.error ? simchain::to_string(*tx.error) : "penalty");
      // An extra commitment is the signer's fault, not the relay's.
      if (fn == "commit" || fn == "commit_premature") {
        add(kind, "admin");
      } else {
        add(kind, party_of(chain, parties, tx.sender));
      }
      continue;
    }
    if (!tx.valid()) continue;
    if (fn == "report_refused_signature") {
      add("RefusedSignature", "admin");
    } else if (fn == "report" && !tx.call.args.empty()) {
      if (const auto* voter = std::get_if<IdentityId>(&tx.call.args[0])) {
        add("DoubleDemand", party_of(chain, parties, *voter));
      }
    } else if (fn == "blame" || fn == "settle") {
      for (IdentityId id : slashed_ids(tx.note)) {
        add(fn == "blame" ? "Blamed" : "SilentFakeBidder", party_of(chain, parties, id));
      }
    }
  }
  return out;
}

}  // namespace chainlab::harness
