#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace chainlab::crypto {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigInt& value) { return value.str(); }

inline BigInt from_decimal(const std::string& text) { return BigInt(text); }

}  // namespace chainlab::crypto
