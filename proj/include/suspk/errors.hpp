#pragma once

#include <stdexcept>
#include <string>

namespace suspk {

// Every contract violation surfaces as one of these named conditions so that
// callers (and the CLI error reports) can dispatch on the condition, not on
// message text.
enum class ErrorCode {
  Reducible,
  NotIsolating,
  FieldMismatch,
  DivisionByZero,
  NotPrimitive,
  NotSquare,
  DegenerateBase,
  AperiodicityCheckFailed,
  DimensionMismatch,
  RationalTime,
  UnsupportedUnits,
  MalformedCertificate,
  HorizonTooLarge,
  IllegalWord,
  ParseError,
  Internal,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::NotIsolating: return "NotIsolating";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::DegenerateBase: return "DegenerateBase";
    case ErrorCode::AperiodicityCheckFailed: return "AperiodicityCheckFailed";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RationalTime: return "RationalTime";
    case ErrorCode::UnsupportedUnits: return "UnsupportedUnits";
    case ErrorCode::MalformedCertificate: return "MalformedCertificate";
    case ErrorCode::HorizonTooLarge: return "HorizonTooLarge";
    case ErrorCode::IllegalWord: return "IllegalWord";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace suspk
