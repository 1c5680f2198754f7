#pragma once

#include <variant>
#include <vector>

#include "chainlab/simchain/types.hpp"

namespace chainlab::simchain {

/// Throws ChainError(BadArguments) unless exactly `count` arguments are given.
inline void expect_arity(const std::vector<Arg>& args, std::size_t count) {
  if (args.size() != count) throw ChainError(Error::BadArguments, "expected " + std::to_string(count) + " arguments");
}

/// Typed argument access; throws ChainError(BadArguments) on a type mismatch.
template <class T>
const T& arg(const std::vector<Arg>& args, std::size_t index) {
  if (index >= args.size()) throw ChainError(Error::BadArguments, "missing argument");
  const T* value = std::get_if<T>(&args[index]);
  if (value == nullptr) throw ChainError(Error::BadArguments, "argument " + std::to_string(index) + " has wrong type");
  return *value;
}

}  // namespace chainlab::simchain
