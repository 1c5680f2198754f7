#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainlab/harness/auction_runner.hpp"
#include "chainlab/harness/trace.hpp"

namespace chainlab::harness {

/// An outside observer, or bidder j (0-based) seeing its own identities.
struct ObserverSpec {
  std::optional<std::size_t> bidder;

  /// "outside", "3" or "bidder3" (1-based). Throws HarnessError(InvalidScenario).
  static ObserverSpec parse(std::string_view text);
  std::string name() const;
};

/// Same maximum and same set of maximizers.
bool compatible(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b);

struct OdOptions {
  /// Extra B'-runs with fresh nonces for bidders that are neither maximizers
  /// nor the observer, tried when the first B'-run differs.
  int nonce_attempts = 32;
};

struct OdVerdict {
  bool equal = false;
  std::optional<std::size_t> divergence;
  ObservationTrace trace_a;
  ObservationTrace trace_b;
  /// B'-runs needed; 1 means identical harness randomness sufficed.
  int runs = 0;

  std::string describe() const;
};

/// Runs `base` with bids a, records the observer's trace, then searches for a
/// B'-run reproducing it. Throws HarnessError(IncompatibleSequences).
OdVerdict check_observational_determinism(const AuctionScenario& base, const std::vector<std::int64_t>& a,
                                          const std::vector<std::int64_t>& b, const ObserverSpec& observer,
                                          const OdOptions& options = {});

/// Canonicalized projection of a finished run for an observer.
ObservationTrace project(const AuctionRun& run, const ObserverSpec& observer);

}  // namespace chainlab::harness
