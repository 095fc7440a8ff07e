// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace k3map {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& v) { return v.str(); }

// Parses an optionally signed decimal integer; throws Error(Parse) otherwise.
BigInt parse_bigint(const std::string& text);

}  // namespace k3map
