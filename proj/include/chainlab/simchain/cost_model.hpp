#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "chainlab/simchain/types.hpp"

namespace chainlab::simchain {

struct GasRange {
  Gas min = 0;
  Gas max = 0;
};

/// How a function's [min, max] range collapses to one charge.
enum class ChargePolicy {
  Min,
  Max,
  Midpoint,
  /// First call of a function in a run pays max (cold storage), later calls
  /// pay min.
  ColdWarm,
};

class CostModel {
 public:
  CostModel() = default;
  explicit CostModel(std::map<std::string, GasRange, std::less<>> entries);

  /// Text format: one `name = max` or `name = min max` per line; `#` starts a
  /// comment. Throws std::invalid_argument on malformed input.
  static CostModel parse(std::string_view text);
  static CostModel load(const std::filesystem::path& path);

  /// Per-function measurements for the voting contract.
  static CostModel blind_vote_reference();
  /// One gas unit per call for every auction function.
  static CostModel auction_call_count();

  bool contains(std::string_view function) const;
  /// Throws ChainError(UnknownFunction).
  const GasRange& at(std::string_view function) const;
  const std::map<std::string, GasRange, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, GasRange, std::less<>> entries_;
};

Gas charge(const CostModel& model, std::string_view function, ChargePolicy policy, bool first_call);

/// Accumulates per-function charges; owns the cold/warm memory.
class GasMeter {
 public:
  explicit GasMeter(ChargePolicy policy = ChargePolicy::ColdWarm) : policy_(policy) {}

  Gas charge(const CostModel& model, std::string_view contract_kind, std::string_view function);
  ChargePolicy policy() const { return policy_; }

 private:
  ChargePolicy policy_;
  std::set<std::string, std::less<>> seen_;
};

}  // namespace chainlab::simchain
