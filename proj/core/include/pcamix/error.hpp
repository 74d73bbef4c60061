#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcamix {

enum class ErrorCode {
  // Input validation
  EmptyTable,
  TooFewRows,
  RaggedColumns,
  DuplicateName,
  MissingValue,
  NonFinite,
  ZeroVariance,
  SingleCategory,
  // Parameters
  InvalidArgument,
  KTooLarge,
  KTooSmall,
  DegenerateInput,
  IndexSetMismatch,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for errors caused by the data itself (as opposed to a bad parameter).
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string column = {});

  ErrorCode code() const noexcept { return code_; }
  /// Name of the offending column, empty when the error is not column specific.
  const std::string& column() const noexcept { return column_; }

 private:
  ErrorCode code_;
  std::string column_;
};

}  // namespace pcamix
