#include "chainlab/harness/report.hpp"

#include <algorithm>
#include <sstream>

namespace chainlab::harness {

std::vector<GasRow> gas_rows(const simchain::Chain& chain, const std::vector<PartyAccount>& parties) {
  std::vector<GasRow> rows;
  for (const simchain::Transaction& tx : chain.state().log) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const GasRow& r) { return r.function == tx.call.function; });
    if (it == rows.end()) {
      rows.push_back(GasRow{tx.call.function, 0, 0, {}});
      it = std::prev(rows.end());
    }
    ++it->calls;
    it->total_gas += tx.gas;
    std::string role = "?";
    if (const auto& owner = chain.identity(tx.sender).owner) {
      for (const PartyAccount& p : parties) {
        if (p.principal == *owner) role = p.role;
      }
    }
    if (it->payer_role.empty()) {
      it->payer_role = role;
    } else if (("+" + it->payer_role + "+").find("+" + role + "+") == std::string::npos) {
      it->payer_role += "+" + role;
    }
  }
  return rows;
}

std::string gas_csv(const std::vector<GasRow>& rows) {
  std::ostringstream os;
  os << "function,calls,total_gas,payer_role\n";
  std::size_t calls = 0;
  simchain::Gas gas = 0;
  for (const GasRow& r : rows) {
    os << r.function << ',' << r.calls << ',' << r.total_gas << ',' << r.payer_role << '\n';
    calls += r.calls;
    gas += r.total_gas;
  }
  os << "total," << calls << ',' << gas << ",\n";
  return os.str();
}

AuctionSummary summarize(const AuctionRun& run) {
  const auto& c = run.contract();
  AuctionSummary s;
  s.rounds = c.round();
  s.blocks_used = run.chain->height();
  if (!run.calls_per_bidder.empty()) {
    s.calls_per_bidder = *std::max_element(run.calls_per_bidder.begin(), run.calls_per_bidder.end());
  }
  s.winner = c.winner() ? "bidder" + std::to_string(*c.winner() + 1) : "none";
  s.max_bid = c.winner() ? c.winning_bid() : 0;
  s.restarts = c.traversals() - 1;
  return s;
}

std::string auction_csv(const std::vector<AuctionSummary>& rows) {
  std::ostringstream os;
  os << "round,blocks_used,calls_per_bidder,winner,max_bid,restarts\n";
  for (const AuctionSummary& r : rows) {
    os << r.rounds << ',' << r.blocks_used << ',' << r.calls_per_bidder << ',' << r.winner << ',' << r.max_bid << ','
       << r.restarts << '\n';
  }
  return os.str();
}

std::string balances_csv(const std::vector<PartyAccount>& parties) {
  std::ostringstream os;
  os << "party,role,initial,final,net,fees\n";
  for (const PartyAccount& p : parties) {
    os << p.name << ',' << p.role << ',' << p.initial << ',' << p.final << ',' << p.net() << ',' << p.fees << '\n';
  }
  return os.str();
}

std::string penalties_csv(const std::vector<PenaltyEvent>& events) {
  std::ostringstream os;
  os << "block,seq,function,kind,offender\n";
  for (const PenaltyEvent& e : events) {
    os << e.block << ',' << e.seq << ',' << e.function << ',' << e.kind << ',' << e.offender << '\n';
  }
  return os.str();
}

}  // namespace chainlab::harness
