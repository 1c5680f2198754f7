#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chainlab/simchain/chain.hpp"

namespace chainlab::harness {

/// One transaction as an observer sees it. Arguments, values and identity
/// ownership are deliberately absent.
struct TraceEvent {
  simchain::Height block = 0;
  std::string function;
  bool valid = false;
  std::string sender;
  /// Sent by one of the observer's own identities.
  bool own = false;
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct ObservationTrace {
  std::string observer;
  std::vector<TraceEvent> events;
};

/// Projection of the chain log for an observer controlling `own`. Only
/// transactions to `contract` are kept when one is given.
ObservationTrace observe(const simchain::Chain& chain, const std::set<simchain::IdentityId>& own,
                         std::string observer, std::optional<simchain::IdentityId> contract = std::nullopt);

/// Identities of a principal, as known to the harness.
std::set<simchain::IdentityId> identities_of(const simchain::Chain& chain, simchain::PrincipalId principal);

/// Renames senders to #1, #2, ... by first appearance.
ObservationTrace canonicalize(const ObservationTrace& trace);

/// Index of the first differing event (or the shorter length); nullopt when equal.
std::optional<std::size_t> first_divergence(const ObservationTrace& a, const ObservationTrace& b);

std::string to_text(const ObservationTrace& trace);
std::string to_text(const TraceEvent& event);

/// Full public log with arguments, one transaction per line.
std::string serialize_log(const simchain::Chain& chain);

}  // namespace chainlab::harness
