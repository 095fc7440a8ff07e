// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#include "k3map/error.hpp"

#include <cctype>

#include "k3map/bigint.hpp"

namespace k3map {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DetNotOne: return "DetNotOne";
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::ConstantNotUnit: return "ConstantNotUnit";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::RefinementBudgetExceeded: return "RefinementBudgetExceeded";
    case ErrorCode::UndecidedCircleMembership: return "UndecidedCircleMembership";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::EpsTooSmall: return "EpsTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

BigInt parse_bigint(const std::string& text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) throw Error(ErrorCode::Parse, "not an integer: '" + text + "'");
  for (std::size_t j = i; j < text.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) throw Error(ErrorCode::Parse, "not an integer: '" + text + "'");
  BigInt v(text.substr(i));
  return text[0] == '-' ? BigInt(-v) : v;
}

}  // namespace k3map
