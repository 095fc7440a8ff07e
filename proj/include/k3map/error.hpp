// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace k3map {

enum class ErrorCode {
  Parse,
  NonSquare,
  DimensionMismatch,
  DetNotOne,
  NotMonic,
  ConstantNotUnit,
  BadParams,
  RefinementBudgetExceeded,
  UndecidedCircleMembership,
  BudgetExceeded,
  EpsTooSmall,
  InvalidArgument,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above.
// DetNotOne additionally carries the computed determinant in decimal.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string detail = {})
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace k3map
