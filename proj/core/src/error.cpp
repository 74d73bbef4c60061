#include "pcamix/error.hpp"

#include <utility>

namespace pcamix {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyTable: return "EmptyTable";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::RaggedColumns: return "RaggedColumns";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::SingleCategory: return "SingleCategory";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::IndexSetMismatch: return "IndexSetMismatch";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyTable:
    case ErrorCode::TooFewRows:
    case ErrorCode::RaggedColumns:
    case ErrorCode::DuplicateName:
    case ErrorCode::MissingValue:
    case ErrorCode::NonFinite:
    case ErrorCode::ZeroVariance:
    case ErrorCode::SingleCategory:
    case ErrorCode::DegenerateInput:
      return true;
    default:
      return false;
  }
}

namespace {
std::string decorate(ErrorCode code, const std::string& message, const std::string& column) {
  std::string out(to_string(code));
  if (!column.empty()) out += " [column '" + column + "']";
  out += ": " + message;
  return out;
}
}  // namespace

Error::Error(ErrorCode code, std::string message, std::string column)
    : std::runtime_error(decorate(code, message, column)),
      code_(code),
      column_(std::move(column)) {}

}  // namespace pcamix
