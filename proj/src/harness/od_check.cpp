#include "chainlab/harness/od_check.hpp"

#include <charconv>

#include "chainlab/auction/bat.hpp"
#include "chainlab/crypto/rng.hpp"

namespace chainlab::harness {

ObserverSpec ObserverSpec::parse(std::string_view text) {
  if (text == "outside") return {};
  std::string_view digits = text;
  if (digits.rfind("bidder", 0) == 0) digits.remove_prefix(6);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || value == 0) {
    throw HarnessError(HarnessError::Kind::InvalidScenario, "bad observer '" + std::string(text) + "'");
  }
  return ObserverSpec{value - 1};
}

std::string ObserverSpec::name() const { return bidder ? "bidder" + std::to_string(*bidder + 1) : "outside"; }

bool compatible(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  if (a.size() != b.size() || a.empty()) return false;
  const auto wa = auction::brute_force_winner(a);
  const auto wb = auction::brute_force_winner(b);
  return wa.max == wb.max && wa.argmax == wb.argmax;
}

std::string OdVerdict::describe() const {
  if (equal) return "equal (" + std::to_string(trace_a.events.size()) + " events, " + std::to_string(runs) + " B'-runs)";
  std::string out = "differs at event " + std::to_string(divergence.value_or(0));
  auto at = [&](const ObservationTrace& t) {
    const std::size_t i = divergence.value_or(0);
    return i < t.events.size() ? to_text(t.events[i]) : std::string("<end>");
  };
  out += ": A has '" + at(trace_a) + "', B' has '" + at(trace_b) + "'";
  return out;
}

ObservationTrace project(const AuctionRun& run, const ObserverSpec& observer) {
  std::set<IdentityId> own;
  if (observer.bidder) own = identities_of(*run.chain, run.parties.at(*observer.bidder).principal);
  return canonicalize(observe(*run.chain, own, observer.name(), run.contract_id));
}

namespace {

AuctionScenario with_bids(const AuctionScenario& base, const std::vector<std::int64_t>& bids) {
  AuctionScenario s = base;
  if (s.bidders.size() != bids.size()) s.bidders.assign(bids.size(), BidderSpec{});
  for (std::size_t i = 0; i < bids.size(); ++i) s.bidders[i].bid = bids[i];
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (!s.nonces.count(i)) s.nonces[i] = default_nonce(s.chain.seed, i);
  }
  s.witness.reset();
  return s;
}

}  // namespace

OdVerdict check_observational_determinism(const AuctionScenario& base, const std::vector<std::int64_t>& a,
                                          const std::vector<std::int64_t>& b, const ObserverSpec& observer,
                                          const OdOptions& options) {
  if (!compatible(a, b)) {
    throw HarnessError(HarnessError::Kind::IncompatibleSequences, "bid sequences differ in maximum or maximizers");
  }
  if (observer.bidder && (*observer.bidder >= a.size() || a[*observer.bidder] != b[*observer.bidder])) {
    throw HarnessError(HarnessError::Kind::IncompatibleSequences, "observer's own bid must agree in both sequences");
  }
  AuctionScenario sa = with_bids(base, a);
  Scenario check{Scenario::Protocol::Auction, {}, {}, sa};
  validate(check);
  check.auction = with_bids(base, b);
  validate(check);

  const AuctionRun run_a = run_auction(sa);
  OdVerdict verdict;
  verdict.trace_a = project(run_a, observer);

  AuctionScenario sb = with_bids(base, b);
  sb.witness = WitnessPlan{run_a.movers, observer.bidder};
  const auto maximizers = auction::brute_force_winner(b).argmax;
  crypto::DeterministicRng search(base.chain.seed, "witness-nonces");
  for (int attempt = 0; attempt <= options.nonce_attempts; ++attempt) {
    if (attempt > 0) {
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (maximizers.count(i) || (observer.bidder && *observer.bidder == i)) continue;
        sb.nonces[i] = search.next_digest();
      }
    }
    const AuctionRun run_b = run_auction(sb);
    verdict.trace_b = project(run_b, observer);
    verdict.runs = attempt + 1;
    verdict.divergence = first_divergence(verdict.trace_a, verdict.trace_b);
    if (!verdict.divergence) {
      verdict.equal = true;
      return verdict;
    }
    if (base.config.variant != auction::Variant::P3) break;
  }
  // Report the divergence of the identical-randomness run.
  if (verdict.runs > 1) {
    sb.nonces = with_bids(base, b).nonces;
    const AuctionRun run_b = run_auction(sb);
    verdict.trace_b = project(run_b, observer);
    verdict.divergence = first_divergence(verdict.trace_a, verdict.trace_b);
  }
  return verdict;
}

}  // namespace chainlab::harness
