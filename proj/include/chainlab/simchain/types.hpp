#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chainlab/crypto/bigint.hpp"
#include "chainlab/crypto/hash.hpp"
#include "chainlab/simchain/error.hpp"

namespace chainlab::simchain {

using Height = std::int64_t;
using Amount = std::int64_t;
using Gas = std::int64_t;

struct IdentityId {
  std::uint64_t value = 0;
  auto operator<=>(const IdentityId&) const = default;
};

/// Harness-side principal controlling one or more identities.
struct PrincipalId {
  std::uint64_t value = 0;
  auto operator<=>(const PrincipalId&) const = default;
};

struct Identity {
  IdentityId id;
  bool is_pseudonym = false;
  /// Known to the harness only; never part of an observation.
  std::optional<PrincipalId> owner;
  std::string label;
};

/// ABI-style call argument as posted on chain.
using Arg = std::variant<std::int64_t, crypto::BigInt, crypto::Digest, std::string, IdentityId>;

struct Call {
  std::string function;
  std::vector<Arg> args;
};

enum class TxStatus { Pending, Accepted, Rejected, Penalized };

std::string_view to_string(TxStatus status);

struct Transaction {
  std::uint64_t seq = 0;
  /// 0 while pending; fixed at inclusion.
  Height block = 0;
  IdentityId sender;
  IdentityId contract;
  Call call;
  Amount attached_value = 0;
  TxStatus status = TxStatus::Pending;
  std::optional<Error> error;
  std::string note;
  Gas gas = 0;
  Amount fee = 0;

  /// Accepted or penalized transactions changed contract state.
  bool executed() const { return status == TxStatus::Accepted || status == TxStatus::Penalized; }
  /// The statement-validity bit exposed to observers.
  bool valid() const { return status == TxStatus::Accepted; }
};

std::string describe(const Arg& arg);

}  // namespace chainlab::simchain
